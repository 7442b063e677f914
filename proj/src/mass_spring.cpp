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
#include "unfurl/mass_spring.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

namespace unfurl
{

void MMConfig::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) {
            throw ConfigError(std::string("MMConfig: ") + name + " must be positive");
        }
    };
    auto non_negative = [](double v, const char* name) {
        if (!(v >= 0) || !std::isfinite(v)) {
            throw ConfigError(std::string("MMConfig: ") + name + " must be non-negative");
        }
    };
    positive(vertex_mass, "vertex_mass");
    positive(stiffness, "stiffness");
    non_negative(damping, "damping");
    non_negative(gravity, "gravity");
    positive(timestep, "timestep");
    positive(ke_threshold, "ke_threshold");
    if (max_steps <= 0) {
        throw ConfigError("MMConfig: max_steps must be positive");
    }
    if (collision_restitution < 0 || collision_restitution > 1) {
        throw ConfigError("MMConfig: collision_restitution must be in [0,1]");
    }
    const double bound = 2.0 * std::sqrt(vertex_mass / stiffness);
    if (!(timestep < bound)) {
        throw ConfigError("MMConfig: timestep " + std::to_string(timestep) +
                          " violates the stability bound 2*sqrt(mass/stiffness) = " +
                          std::to_string(bound));
    }
}

namespace
{

/** Rotation taking the mesh's best-fit plane normal onto +z (Rodrigues) */
std::array<Vec3, 3> plane_alignment(const std::vector<Vec3>& points)
{
    Vec3 mean{0, 0, 0};
    for (const auto& p : points) {
        mean += p;
    }
    mean *= 1.0 / static_cast<double>(points.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& p : points) {
        Eigen::Vector3d d(p.x - mean.x, p.y - mean.y, p.z - mean.z);
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Eigen::Vector3d n = eig.eigenvectors().col(0);  // smallest principal axis

    // Deterministic sign: prefer +z; fall back to the largest component.
    if (std::abs(n.z()) > 1e-12) {
        if (n.z() < 0) {
            n = -n;
        }
    } else {
        int max_c = 0;
        n.cwiseAbs().maxCoeff(&max_c);
        if (n[max_c] < 0) {
            n = -n;
        }
    }

    const Eigen::Vector3d z(0, 0, 1);
    const Eigen::Vector3d axis = n.cross(z);
    const double s2 = axis.squaredNorm();
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    if (s2 > 1e-24) {
        Eigen::Matrix3d ax;
        ax << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
        rot += ax + ax * ax * ((1.0 - n.dot(z)) / s2);
    }
    return {Vec3{rot(0, 0), rot(0, 1), rot(0, 2)}, Vec3{rot(1, 0), rot(1, 1), rot(1, 2)},
            Vec3{rot(2, 0), rot(2, 1), rot(2, 2)}};
}

}  // namespace

SpringSystem build_spring_system(const TriMesh3& mesh, const MMConfig& config)
{
    config.validate();

    SpringSystem sys;
    sys.config = config;
    sys.velocities.assign(mesh.vertex_count(), Vec3{0, 0, 0});

    const auto rot = plane_alignment(mesh.vertices());
    sys.positions.resize(mesh.vertex_count());
    double min_z = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mesh.vertex_count(); i++) {
        const auto& p = mesh.vertices()[i];
        sys.positions[i] = {dot(rot[0], p), dot(rot[1], p), dot(rot[2], p)};
        min_z = std::min(min_z, sys.positions[i].z);
    }
    for (auto& p : sys.positions) {
        p.z -= min_z;
    }

    // One spring per unique mesh edge, rest length = 3D edge length.
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;
    for (const auto& f : mesh.faces()) {
        for (int j = 0; j < 3; j++) {
            auto a = f[j];
            auto b = f[(j + 1) % 3];
            if (a > b) {
                std::swap(a, b);
            }
            edges.try_emplace({a, b}, norm(mesh.vertices()[b] - mesh.vertices()[a]));
        }
    }
    sys.springs.reserve(edges.size());
    for (const auto& [key, rest] : edges) {
        sys.springs.push_back({key.first, key.second, rest});
    }
    sys.adjacency = kernels::SpringAdjacency::build(mesh.vertex_count(), sys.springs);
    return sys;
}

void step(SpringSystem& system, kernels::Backend backend)
{
    static thread_local std::vector<Vec3> forces;
    forces.resize(system.positions.size());
    kernels::spring_forces(system.positions, system.velocities, system.springs,
                           system.adjacency, system.config.stiffness,
                           system.config.damping, system.config.gravity,
                           system.config.vertex_mass, forces, backend);
    kernels::integrate(system.positions, system.velocities, forces,
                       system.config.vertex_mass, system.config.timestep,
                       system.config.collision_restitution, backend);
    system.step_count++;

    for (std::size_t i = 0; i < system.positions.size(); i++) {
        if (!is_finite(system.positions[i]) || !is_finite(system.velocities[i])) {
            throw Diverged("mass-spring state non-finite at step " +
                           std::to_string(system.step_count) + ", vertex " +
                           std::to_string(i));
        }
    }
}

SimulateStatus simulate(SpringSystem& system, kernels::Backend backend,
                        const std::function<void(const SpringSystem&)>& on_snapshot,
                        std::int64_t snapshot_every)
{
    const double ke_stop =
        system.config.ke_threshold * static_cast<double>(system.positions.size());

    SimulateStatus status;
    // At least one step always runs so plane contact is established before
    // convergence is declared, even for a system that starts at rest.
    double ke = 0;
    std::int64_t taken = 0;
    do {
        step(system, backend);
        taken++;
        ke = kernels::kinetic_energy(system.velocities, system.config.vertex_mass);
        if (snapshot_every > 0 && on_snapshot && taken % snapshot_every == 0) {
            on_snapshot(system);
        }
    } while (ke > ke_stop && taken < system.config.max_steps);

    status.converged = ke <= ke_stop;
    status.steps = taken;
    status.kinetic_energy = ke;
    status.plane_residual = 0;
    for (const auto& p : system.positions) {
        status.plane_residual = std::max(status.plane_residual, std::abs(p.z));
    }
    system.converged = status.converged;
    system.plane_residual = status.plane_residual;
    if (on_snapshot) {
        on_snapshot(system);
    }
    return status;
}

UVMap project_to_plane(const SpringSystem& system)
{
    UVMap uv;
    uv.tag = Algorithm::MM;
    uv.uv.resize(system.positions.size());
    for (std::size_t i = 0; i < system.positions.size(); i++) {
        uv.uv[i] = {system.positions[i].x, system.positions[i].y};
    }
    return uv;
}

UVMap mm_flatten(const TriMesh3& mesh, const MMConfig& config, kernels::Backend backend,
                 SimulateStatus* status_out)
{
    auto sys = build_spring_system(mesh, config);
    auto status = simulate(sys, backend);
    if (status_out) {
        *status_out = status;
    }
    return project_to_plane(sys);
}

}  // namespace unfurl
