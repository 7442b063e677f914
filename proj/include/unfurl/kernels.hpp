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
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unfurl/geometry.hpp"

namespace unfurl::kernels
{

/**
 * @brief Execution backend for the data-parallel kernels
 *
 * Every kernel computes each output element independently and in a fixed
 * per-element order, so Serial and OpenMP produce bit-identical results.
 * The Serial path is the reference the tests compare against.
 */
enum class Backend {
    Serial,
    OpenMP,
};

/** OpenMP when compiled in, Serial otherwise */
Backend default_backend() noexcept;

/** @brief One edge spring: endpoint vertex ids and 3D rest length */
struct Spring {
    std::uint32_t i;
    std::uint32_t j;
    double rest_length;
};

/**
 * @brief CSR map from vertex to incident springs
 *
 * Force accumulation gathers per vertex over this table in ascending spring
 * order, which keeps floating-point sums independent of thread count.
 */
struct SpringAdjacency {
    std::vector<std::uint32_t> offsets;     // size = vertex_count + 1
    std::vector<std::uint32_t> spring_ids;  // incident springs, ascending per vertex
    std::vector<double> signs;              // +1 when the vertex is spring.i, else -1

    static SpringAdjacency build(std::size_t vertex_count, std::span<const Spring> springs);
};

/**
 * @brief Per-vertex force gather: Hooke springs + viscous damping + gravity
 *
 * forces[v] = sum_incident k*(|d|-rest)*dhat - c*vel[v] - g*m*zhat, with d
 * pointing from v toward the spring's other endpoint.
 */
void spring_forces(std::span<const Vec3> positions, std::span<const Vec3> velocities,
                   std::span<const Spring> springs, const SpringAdjacency& adjacency,
                   double stiffness, double damping, double gravity, double vertex_mass,
                   std::span<Vec3> forces_out, Backend backend);

/**
 * @brief One semi-implicit Euler step with inelastic plane collision
 *
 * v += dt*f/m, x += dt*v, then any x.z < 0 is projected to z = 0 with the
 * z velocity zeroed (restitution scales the reflected z velocity).
 */
void integrate(std::span<Vec3> positions, std::span<Vec3> velocities,
               std::span<const Vec3> forces, double vertex_mass, double dt,
               double restitution, Backend backend);

/** @brief Total kinetic energy, fixed-order serial sum */
double kinetic_energy(std::span<const Vec3> velocities, double vertex_mass);

/**
 * @brief Per-corner interior angles of every face, radians
 *
 * angles_out[3*f + j] is the angle of face f at vertex faces[f][j].
 */
void corner_angles(std::span<const Vec3> vertices, std::span<const Face> faces,
                   std::span<double> angles_out, Backend backend);

/** @brief Per-corner interior angles of the 2D (UV) faces, radians */
void corner_angles_2d(std::span<const Vec2> uv, std::span<const Face> faces,
                      std::span<double> angles_out, Backend backend);

/**
 * @brief Raw per-face stretch quantities of the parameter-to-surface map
 *
 * sigma_max/sigma_min are the singular values of the affine map from the 2D
 * face to the 3D face. Faces with zero 2D area produce non-finite sigmas;
 * callers apply their own thresholds.
 */
struct FaceStretch {
    double sigma_max;
    double sigma_min;
    double area_3d;
    double area_2d_signed;
};

void face_stretch(std::span<const Vec3> vertices, std::span<const Vec2> uv,
                  std::span<const Face> faces, std::span<FaceStretch> out, Backend backend);

}  // namespace unfurl::kernels
