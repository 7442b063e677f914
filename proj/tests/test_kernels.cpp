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

#include <cstring>

#include "test_helpers.hpp"
#include "unfurl/kernels.hpp"
#include "unfurl/metrics.hpp"
#include "unfurl/synthetic.hpp"

using namespace unfurl;
using kernels::Backend;

namespace
{

std::vector<Vec3> random_points(std::size_t n, double lo = -1, double hi = 1)
{
    std::vector<Vec3> out(n);
    for (auto& p : out) {
        p = {oracle::uniform(lo, hi), oracle::uniform(lo, hi), oracle::uniform(lo, hi)};
    }
    return out;
}

template <class T>
bool bit_identical(const std::vector<T>& a, const std::vector<T>& b)
{
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

}  // namespace

TEST_CASE("spring adjacency indexes every incidence once")
{
    std::vector<kernels::Spring> springs{{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}};
    auto adj = kernels::SpringAdjacency::build(3, springs);
    REQUIRE(adj.offsets.size() == 4);
    CHECK(adj.offsets[3] == 6);
    // vertex 1 touches springs 0 (as j) and 1 (as i)
    CHECK(adj.offsets[2] - adj.offsets[1] == 2);
    CHECK(adj.spring_ids[adj.offsets[1]] == 0);
    CHECK(adj.signs[adj.offsets[1]] == -1.0);
    CHECK(adj.spring_ids[adj.offsets[1] + 1] == 1);
    CHECK(adj.signs[adj.offsets[1] + 1] == 1.0);
}

TEST_CASE("serial and OpenMP backends are bit-identical")
{
    // spring forces + integrate on a random system
    const std::size_t n = 257;
    auto pos = random_points(n);
    auto vel = random_points(n, -0.1, 0.1);
    std::vector<kernels::Spring> springs;
    for (std::size_t s = 0; s < 4 * n; s++) {
        auto i = static_cast<std::uint32_t>(oracle::uniform(0, n - 1e-9));
        auto j = static_cast<std::uint32_t>(oracle::uniform(0, n - 1e-9));
        if (i != j) {
            springs.push_back({i, j, oracle::uniform(0.1, 2.0)});
        }
    }
    auto adj = kernels::SpringAdjacency::build(n, springs);

    std::vector<Vec3> f_serial(n), f_omp(n);
    kernels::spring_forces(pos, vel, springs, adj, 950.0, 4.0, 9.5, 1.25, f_serial,
                           Backend::Serial);
    kernels::spring_forces(pos, vel, springs, adj, 950.0, 4.0, 9.5, 1.25, f_omp,
                           Backend::OpenMP);
    CHECK(bit_identical(f_serial, f_omp));

    auto pos_s = pos, pos_o = pos;
    auto vel_s = vel, vel_o = vel;
    kernels::integrate(pos_s, vel_s, f_serial, 1.25, 1e-3, 0.0, Backend::Serial);
    kernels::integrate(pos_o, vel_o, f_omp, 1.25, 1e-3, 0.0, Backend::OpenMP);
    CHECK(bit_identical(pos_s, pos_o));
    CHECK(bit_identical(vel_s, vel_o));

    // per-face kernels on a synthetic mesh with a random UV
    auto mesh = generate_synthetic(SyntheticKind::Ripple, 15);
    std::vector<Vec2> uv(mesh.vertex_count());
    for (auto& p : uv) {
        p = {oracle::uniform(-3, 3), oracle::uniform(-3, 3)};
    }
    std::vector<double> ang_s(3 * mesh.face_count()), ang_o(3 * mesh.face_count());
    kernels::corner_angles(mesh.vertices(), mesh.faces(), ang_s, Backend::Serial);
    kernels::corner_angles(mesh.vertices(), mesh.faces(), ang_o, Backend::OpenMP);
    CHECK(bit_identical(ang_s, ang_o));

    kernels::corner_angles_2d(uv, mesh.faces(), ang_s, Backend::Serial);
    kernels::corner_angles_2d(uv, mesh.faces(), ang_o, Backend::OpenMP);
    CHECK(bit_identical(ang_s, ang_o));

    std::vector<kernels::FaceStretch> st_s(mesh.face_count()), st_o(mesh.face_count());
    kernels::face_stretch(mesh.vertices(), uv, mesh.faces(), st_s, Backend::Serial);
    kernels::face_stretch(mesh.vertices(), uv, mesh.faces(), st_o, Backend::OpenMP);
    CHECK(bit_identical(st_s, st_o));
}

TEST_CASE("face_stretch agrees with the standalone triangle_stretch")
{
    for (int trial = 0; trial < 200; trial++) {
        auto t = oracle::random_triangle_pair();
        TriMesh3 mesh({t.q1, t.q2, t.q3}, {{0, 1, 2}});
        std::vector<Vec2> uv{t.p1, t.p2, t.p3};
        std::vector<kernels::FaceStretch> out(1);
        kernels::face_stretch(mesh.vertices(), uv, mesh.faces(), out,
                              kernels::default_backend());
        auto ts = triangle_stretch(t.q1, t.q2, t.q3, t.p1, t.p2, t.p3);
        CHECK(out[0].sigma_max == doctest::Approx(ts.sigma_max).epsilon(1e-12));
        CHECK(out[0].sigma_min == doctest::Approx(ts.sigma_min).epsilon(1e-12));
    }
}

TEST_CASE("kinetic energy is a plain fixed-order sum")
{
    std::vector<Vec3> vel{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
    CHECK(kernels::kinetic_energy(vel, 2.0) == doctest::Approx(1.0 + 4.0 + 9.0));
}
