/*
unfurl - surface flattening toolkit

Copyright 2026 The unfurl authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "test_helpers.hpp"
#include "unfurl/abf.hpp"
#include "unfurl/mass_spring.hpp"
#include "unfurl/metrics.hpp"
#include "unfurl/synthetic.hpp"

using namespace unfurl;

namespace
{

double spring_potential(const SpringSystem& sys)
{
    double pe = 0;
    for (const auto& s : sys.springs) {
        const double len = norm(sys.positions[s.j] - sys.positions[s.i]);
        const double d = len - s.rest_length;
        pe += 0.5 * sys.config.stiffness * d * d;
    }
    return pe;
}

double rms_edge_error(const SpringSystem& sys, const UVMap& uv)
{
    double ss = 0;
    for (const auto& s : sys.springs) {
        const double len = norm(uv.uv[s.j] - uv.uv[s.i]);
        ss += (len - s.rest_length) * (len - s.rest_length);
    }
    return std::sqrt(ss / sys.springs.size());
}

double mean_rest_length(const SpringSystem& sys)
{
    double sum = 0;
    for (const auto& s : sys.springs) {
        sum += s.rest_length;
    }
    return sum / sys.springs.size();
}

}  // namespace

TEST_CASE("MMConfig validation")
{
    MMConfig ok;
    CHECK_NOTHROW(ok.validate());

    MMConfig dt = ok;
    dt.timestep = 2.0 * std::sqrt(dt.vertex_mass / dt.stiffness);  // at the bound
    CHECK_THROWS_AS(dt.validate(), ConfigError);

    MMConfig rest = ok;
    rest.collision_restitution = 1.5;
    CHECK_THROWS_AS(rest.validate(), ConfigError);

    MMConfig mass = ok;
    mass.vertex_mass = 0;
    CHECK_THROWS_AS(mass.validate(), ConfigError);

    // zero gravity and damping are legal states
    MMConfig zero = ok;
    zero.gravity = 0;
    zero.damping = 0;
    CHECK_NOTHROW(zero.validate());
}

TEST_CASE("build_spring_system: single triangle")
{
    auto mesh = oracle::single_triangle();
    auto sys = build_spring_system(mesh);
    CHECK(sys.positions.size() == 3);
    REQUIRE(sys.springs.size() == 3);
    // rest lengths are the side lengths: 1, 1, sqrt(2)
    std::vector<double> rests;
    for (const auto& s : sys.springs) {
        rests.push_back(s.rest_length);
    }
    std::sort(rests.begin(), rests.end());
    CHECK(rests[0] == doctest::Approx(1.0));
    CHECK(rests[1] == doctest::Approx(1.0));
    CHECK(rests[2] == doctest::Approx(std::sqrt(2.0)));
    // starts resting on the plane with zero velocity
    for (std::size_t i = 0; i < 3; i++) {
        CHECK(sys.velocities[i] == Vec3{0, 0, 0});
        CHECK(sys.positions[i].z >= 0);
    }
}

TEST_CASE("build_spring_system: grid has one spring per unique edge")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 10);
    auto sys = build_spring_system(mesh);
    CHECK(sys.positions.size() == 100);
    // V - E + F = 1 for a disk: E = 100 + 162 - 1
    CHECK(sys.springs.size() == 261);
}

TEST_CASE("build_spring_system: timestep violating the bound is a construction error")
{
    MMConfig cfg;
    cfg.timestep = 0.1;  // bound is 2*sqrt(1/1000) ~ 0.063
    CHECK_THROWS_AS(build_spring_system(oracle::single_triangle(), cfg), ConfigError);
}

TEST_CASE("step: equilibrium state is unchanged without gravity")
{
    MMConfig cfg;
    cfg.gravity = 0;
    auto mesh = generate_synthetic(SyntheticKind::Plane, 4);
    auto sys = build_spring_system(mesh, cfg);
    // pin the state to the exact rest geometry so spring forces are 0 bitwise
    for (std::size_t i = 0; i < sys.positions.size(); i++) {
        sys.positions[i] = mesh.vertices()[i];
    }
    auto before = sys.positions;
    step(sys);
    CHECK(std::memcmp(before.data(), sys.positions.data(),
                      before.size() * sizeof(Vec3)) == 0);
    CHECK(kernels::kinetic_energy(sys.velocities, cfg.vertex_mass) == 0.0);
}

TEST_CASE("step: stretched spring pulls both endpoints symmetrically")
{
    MMConfig cfg;
    cfg.gravity = 0;
    cfg.damping = 0;
    const double delta = 0.25;
    SpringSystem sys;
    sys.config = cfg;
    sys.positions = {{0, 0, 1}, {1 + delta, 0, 1}};
    sys.velocities = {{0, 0, 0}, {0, 0, 0}};
    sys.springs = {{0, 1, 1.0}};
    sys.adjacency = kernels::SpringAdjacency::build(2, sys.springs);
    step(sys);
    // first step velocity = dt * k * delta / m, attracting
    const double expect = cfg.timestep * cfg.stiffness * delta / cfg.vertex_mass;
    CHECK(sys.velocities[0].x == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sys.velocities[1].x == doctest::Approx(-expect).epsilon(1e-12));
}

TEST_CASE("step: plane collision projects and kills downward velocity")
{
    MMConfig cfg;
    SpringSystem sys;
    sys.config = cfg;
    sys.positions = {{0, 0, 0.5e-4}};
    sys.velocities = {{0.5, 0, -0.5}};
    sys.springs = {};
    sys.adjacency = kernels::SpringAdjacency::build(1, sys.springs);
    step(sys);  // z + dt*vz < 0 -> projected
    CHECK(sys.positions[0].z == 0.0);
    CHECK(sys.velocities[0].z == 0.0);
    CHECK(sys.velocities[0].x > 0);  // tangential motion survives
}

TEST_CASE("step: non-finite state raises Diverged")
{
    auto sys = build_spring_system(oracle::single_triangle());
    sys.positions[0].x = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(step(sys), Diverged);
}

TEST_CASE("simulate: resting planar mesh converges in at most two steps")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 6);
    auto sys = build_spring_system(mesh);
    auto status = simulate(sys);
    CHECK(status.converged);
    CHECK(status.steps <= 2);
    auto uv = project_to_plane(sys);
    std::vector<Vec2> input;
    for (const auto& v : mesh.vertices()) {
        input.push_back({v.x, v.y});
    }
    CHECK(oracle::rigid_rms(input, uv.uv) <= 1e-6);
}

TEST_CASE("simulate: quarter cylinder settles within 1% edge error")
{
    auto mesh = generate_synthetic(SyntheticKind::CylinderSector, 20);
    auto sys = build_spring_system(mesh);
    auto status = simulate(sys);
    REQUIRE(status.converged);
    auto uv = project_to_plane(sys);
    CHECK(rms_edge_error(sys, uv) <= 0.01 * mean_rest_length(sys));
}

TEST_CASE("simulate: hemisphere cap keeps strictly positive edge error")
{
    auto mesh = generate_synthetic(SyntheticKind::HemisphereCap, 12);
    auto sys = build_spring_system(mesh);
    auto status = simulate(sys);
    REQUIRE(status.converged);
    auto uv = project_to_plane(sys);
    CHECK(rms_edge_error(sys, uv) > 1e-6);
}

TEST_CASE("project_to_plane copies x,y exactly and records the residual")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 4);
    auto sys = build_spring_system(mesh);
    simulate(sys);
    auto uv = project_to_plane(sys);
    for (std::size_t i = 0; i < sys.positions.size(); i++) {
        CHECK(uv.uv[i].x == sys.positions[i].x);
        CHECK(uv.uv[i].y == sys.positions[i].y);
    }
    CHECK(uv.tag == Algorithm::MM);
    CHECK(sys.plane_residual >= 0);
}

TEST_CASE("energy is non-increasing per step with damping and no gravity")
{
    MMConfig cfg;
    cfg.gravity = 0;
    auto mesh = generate_synthetic(SyntheticKind::Plane, 6);
    auto sys = build_spring_system(mesh, cfg);
    // perturb in-plane so the springs carry energy
    for (std::size_t i = 0; i < sys.positions.size(); i++) {
        sys.positions[i].x += 0.05 * std::sin(17.0 * static_cast<double>(i));
        sys.positions[i].y += 0.05 * std::cos(11.0 * static_cast<double>(i));
        sys.positions[i].z += 0.2;  // keep clear of the collision plane
    }
    double prev = spring_potential(sys) +
                  kernels::kinetic_energy(sys.velocities, cfg.vertex_mass);
    for (int i = 0; i < 2000; i++) {
        step(sys);
        const double now = spring_potential(sys) +
                           kernels::kinetic_energy(sys.velocities, cfg.vertex_mass);
        CHECK(now <= prev * (1 + 1e-9) + 1e-12);
        prev = now;
    }
}

TEST_CASE("simulation is deterministic")
{
    auto mesh = generate_synthetic(SyntheticKind::CylinderSector, 8);
    auto a = build_spring_system(mesh);
    auto b = build_spring_system(mesh);
    for (int i = 0; i < 500; i++) {
        step(a);
        step(b);
    }
    CHECK(std::memcmp(a.positions.data(), b.positions.data(),
                      a.positions.size() * sizeof(Vec3)) == 0);
    CHECK(std::memcmp(a.velocities.data(), b.velocities.data(),
                      a.velocities.size() * sizeof(Vec3)) == 0);
}

TEST_CASE("serial and OpenMP simulations agree bitwise")
{
    auto mesh = generate_synthetic(SyntheticKind::CylinderSector, 8);
    auto a = build_spring_system(mesh);
    auto b = build_spring_system(mesh);
    for (int i = 0; i < 300; i++) {
        step(a, kernels::Backend::Serial);
        step(b, kernels::Backend::OpenMP);
    }
    CHECK(std::memcmp(a.positions.data(), b.positions.data(),
                      a.positions.size() * sizeof(Vec3)) == 0);
}

TEST_CASE("z-rotation of the input rotates the output UV")
{
    const double angle = kPi / 6;
    auto mesh = generate_synthetic(SyntheticKind::CylinderSector, 8);
    auto uv = mm_flatten(mesh);

    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec3> pts;
    for (const auto& p : mesh.vertices()) {
        pts.push_back({c * p.x - s * p.y, s * p.x + c * p.y, p.z});
    }
    TriMesh3 rot(pts, mesh.faces());
    auto uv_rot = mm_flatten(rot);
    for (std::size_t i = 0; i < uv.uv.size(); i++) {
        auto expect = rotated(uv.uv[i], angle);
        CHECK(std::abs(uv_rot.uv[i].x - expect.x) <= 1e-6);
        CHECK(std::abs(uv_rot.uv[i].y - expect.y) <= 1e-6);
    }
}

TEST_CASE("planar grid keeps near-perfect isometry through MM")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 10);
    auto uv = mm_flatten(mesh);
    auto beta = corner_angles_3d(mesh);
    auto phi = optimal_angles(beta, mesh);
    std::vector<double> w(phi.size());
    for (std::size_t c = 0; c < w.size(); c++) {
        w[c] = 1.0 / (phi[c] * phi[c]);
    }
    auto m = compute_metrics(mesh, uv, phi, w);
    CHECK(m.l2_mesh <= 1.001);
}

TEST_CASE("detect_folds: reflected vertex is reported, originals are clean")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 3);
    UVMap uv;
    uv.uv.clear();
    for (const auto& v : mesh.vertices()) {
        uv.uv.push_back({v.x, v.y});
    }
    CHECK(detect_folds(mesh, uv).empty());

    // single triangle: the majority is itself
    auto tri = oracle::single_triangle();
    UVMap tri_uv;
    tri_uv.uv = {{0, 0}, {1, 0}, {0, 1}};
    CHECK(detect_folds(tri, tri_uv).empty());

    // reflect the center vertex of the 3x3 grid across the x axis of its cell
    auto folded = uv;
    folded.uv[4].y -= 1.2;
    auto folds = detect_folds(mesh, folded);
    CHECK_FALSE(folds.empty());
    for (auto f : folds) {
        const auto& face = mesh.faces()[f];
        CHECK((face[0] == 4 || face[1] == 4 || face[2] == 4));
    }
}

TEST_CASE("mm_flatten: abf optimal angles are not needed, tags are correct")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 4);
    SimulateStatus status;
    auto uv = mm_flatten(mesh, {}, kernels::default_backend(), &status);
    CHECK(uv.tag == Algorithm::MM);
    CHECK(status.converged);
    CHECK(uv.all_finite());
}
