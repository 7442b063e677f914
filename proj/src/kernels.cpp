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
#include "unfurl/kernels.hpp"

#include <cassert>
#include <numeric>

#include "internal/parallel_for.hpp"

namespace unfurl::kernels
{

Backend default_backend() noexcept
{
#ifdef _OPENMP
    return Backend::OpenMP;
#else
    return Backend::Serial;
#endif
}

SpringAdjacency SpringAdjacency::build(std::size_t vertex_count,
                                       std::span<const Spring> springs)
{
    SpringAdjacency adj;
    adj.offsets.assign(vertex_count + 1, 0);
    for (const auto& s : springs) {
        adj.offsets[s.i + 1]++;
        adj.offsets[s.j + 1]++;
    }
    std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
    adj.spring_ids.resize(adj.offsets.back());
    adj.signs.resize(adj.offsets.back());
    std::vector<std::uint32_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    for (std::uint32_t s = 0; s < springs.size(); s++) {
        auto slot_i = cursor[springs[s].i]++;
        adj.spring_ids[slot_i] = s;
        adj.signs[slot_i] = 1.0;
        auto slot_j = cursor[springs[s].j]++;
        adj.spring_ids[slot_j] = s;
        adj.signs[slot_j] = -1.0;
    }
    return adj;
}

void spring_forces(std::span<const Vec3> positions, std::span<const Vec3> velocities,
                   std::span<const Spring> springs, const SpringAdjacency& adjacency,
                   double stiffness, double damping, double gravity, double vertex_mass,
                   std::span<Vec3> forces_out, Backend backend)
{
    assert(forces_out.size() == positions.size());
    // Gather form: each vertex sums its incident springs in CSR order, so
    // no endpoint scatter races and no thread-count-dependent rounding.
    detail::parallel_for(backend, static_cast<std::int64_t>(positions.size()),
                         [&](std::int64_t v) {
        Vec3 f{0, 0, -gravity * vertex_mass};
        f -= damping * velocities[v];
        for (auto k = adjacency.offsets[v]; k < adjacency.offsets[v + 1]; k++) {
            const auto& s = springs[adjacency.spring_ids[k]];
            // d points from this vertex toward the other endpoint
            auto d = adjacency.signs[k] > 0 ? positions[s.j] - positions[s.i]
                                            : positions[s.i] - positions[s.j];
            auto len = norm(d);
            if (len > 0) {
                f += (stiffness * (len - s.rest_length) / len) * d;
            }
        }
        forces_out[v] = f;
    });
}

void integrate(std::span<Vec3> positions, std::span<Vec3> velocities,
               std::span<const Vec3> forces, double vertex_mass, double dt,
               double restitution, Backend backend)
{
    const double inv_mass = 1.0 / vertex_mass;
    detail::parallel_for(backend, static_cast<std::int64_t>(positions.size()),
                         [&](std::int64_t v) {
        velocities[v] += (dt * inv_mass) * forces[v];
        positions[v] += dt * velocities[v];
        if (positions[v].z < 0) {
            positions[v].z = 0;
            if (velocities[v].z < 0) {
                velocities[v].z = -restitution * velocities[v].z;
            }
        }
    });
}

double kinetic_energy(std::span<const Vec3> velocities, double vertex_mass)
{
    double ke = 0;
    for (const auto& v : velocities) {
        ke += 0.5 * vertex_mass * dot(v, v);
    }
    return ke;
}

void corner_angles(std::span<const Vec3> vertices, std::span<const Face> faces,
                   std::span<double> angles_out, Backend backend)
{
    assert(angles_out.size() == faces.size() * 3);
    detail::parallel_for(backend, static_cast<std::int64_t>(faces.size()),
                         [&](std::int64_t f) {
        const auto& face = faces[f];
        for (int j = 0; j < 3; j++) {
            auto a = vertices[face[(j + 1) % 3]] - vertices[face[j]];
            auto b = vertices[face[(j + 2) % 3]] - vertices[face[j]];
            angles_out[3 * f + j] = interior_angle(a, b);
        }
    });
}

void corner_angles_2d(std::span<const Vec2> uv, std::span<const Face> faces,
                      std::span<double> angles_out, Backend backend)
{
    assert(angles_out.size() == faces.size() * 3);
    detail::parallel_for(backend, static_cast<std::int64_t>(faces.size()),
                         [&](std::int64_t f) {
        const auto& face = faces[f];
        for (int j = 0; j < 3; j++) {
            auto a = uv[face[(j + 1) % 3]] - uv[face[j]];
            auto b = uv[face[(j + 2) % 3]] - uv[face[j]];
            angles_out[3 * f + j] = interior_angle(a, b);
        }
    });
}

void face_stretch(std::span<const Vec3> vertices, std::span<const Vec2> uv,
                  std::span<const Face> faces, std::span<FaceStretch> out, Backend backend)
{
    assert(out.size() == faces.size());
    detail::parallel_for(backend, static_cast<std::int64_t>(faces.size()),
                         [&](std::int64_t f) {
        const auto& face = faces[f];
        const auto& q1 = vertices[face[0]];
        const auto& q2 = vertices[face[1]];
        const auto& q3 = vertices[face[2]];
        const auto& p1 = uv[face[0]];
        const auto& p2 = uv[face[1]];
        const auto& p3 = uv[face[2]];

        const double area2 = signed_area(p1, p2, p3);
        const double s1 = p1.x, t1 = p1.y;
        const double s2 = p2.x, t2 = p2.y;
        const double s3 = p3.x, t3 = p3.y;
        const double inv = 1.0 / (2.0 * area2);
        auto ss = inv * (q1 * (t2 - t3) + q2 * (t3 - t1) + q3 * (t1 - t2));
        auto st = inv * (q1 * (s3 - s2) + q2 * (s1 - s3) + q3 * (s2 - s1));
        const double a = dot(ss, ss);
        const double b = dot(ss, st);
        const double c = dot(st, st);
        const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
        out[f] = FaceStretch{
            std::sqrt(std::max(0.0, 0.5 * (a + c + disc))),
            std::sqrt(std::max(0.0, 0.5 * (a + c - disc))),
            triangle_area(q1, q2, q3),
            area2,
        };
    });
}

}  // namespace unfurl::kernels
