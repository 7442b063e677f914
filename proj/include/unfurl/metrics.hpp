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
#include <utility>
#include <vector>

#include "unfurl/kernels.hpp"
#include "unfurl/mesh.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

/**
 * @brief Singular values of the parameter-to-surface map of one triangle
 *
 * sigma_max/sigma_min are the largest/smallest stretch of a unit parameter
 * vector mapped onto the 3D face. l2 is the RMS stretch, linf the largest
 * local stretch. An isometric pair has all four equal to 1.
 */
struct TriangleStretch {
    double sigma_max;
    double sigma_min;
    double l2;
    double linf;
};

/** @brief All per-mesh and per-face distortion measures of one flattening */
struct MetricsReport {
    double l2_mesh{0};
    double linf_mesh{0};
    double f_alpha{0};
    double f_mesh{0};
    double e_mesh{0};

    std::vector<double> face_l2;
    std::vector<double> face_linf;
    std::vector<double> face_area_error;
    /** w*(alpha-phi)^2 per corner; 3 entries per face */
    std::vector<double> corner_angle_error;
    std::vector<std::uint32_t> flipped_face_ids;
    double scale_factor{1.0};
};

/**
 * @brief Uniformly scale the UV so its total 2D area matches the mesh's
 * total 3D area
 *
 * @throws DegenerateParameterization when the total 2D area is zero
 */
UVMap normalize_scale(const UVMap& uv, const TriMesh3& mesh, double* factor_out = nullptr);

/**
 * @brief Stretch singular values of a single 3D/2D triangle pair
 * @throws DegenerateParameterization when the 2D area magnitude is at or
 * below area_floor (default: exactly zero)
 */
TriangleStretch triangle_stretch(const Vec3& q1, const Vec3& q2, const Vec3& q3,
                                 const Vec2& p1, const Vec2& p2, const Vec2& p3,
                                 double area_floor = 0.0);

/**
 * @brief Area-weighted RMS stretch over the mesh; expects scale-normalized UV
 * @throws DegenerateParameterization with the offending face ids
 */
double l2_mesh(const TriMesh3& mesh, const UVMap& uv,
               kernels::Backend backend = kernels::default_backend());

/** @brief Worst-case stretch over the mesh; expects scale-normalized UV */
double linf_mesh(const TriMesh3& mesh, const UVMap& uv,
                 kernels::Backend backend = kernels::default_backend());

/**
 * @brief Weighted squared angular deviation, total and per-angle mean
 *
 * f_alpha = sum_corners w*(alpha-phi)^2; f_mesh = f_alpha / (3*T). Radians.
 */
std::pair<double, double> angular_error(const std::vector<double>& phi,
                                        const std::vector<double>& alpha,
                                        const std::vector<double>& weight);

/**
 * @brief Per-face area-fraction error and its mean
 *
 * With a = A(T)/A(M) and b = A(t)/A(m) (3D and 2D area fractions),
 * E(t) = 1 - b/a if a > b else 1 - a/b. Scale-invariant by construction.
 *
 * @throws DegenerateParameterization for zero-area 2D faces
 */
std::pair<std::vector<double>, double> area_error(const TriMesh3& mesh, const UVMap& uv);

/**
 * @brief Compute the full report for one flattening
 *
 * Normalizes scale internally and records the factor. phi/weight are the
 * optimal angles and weights the angular metric compares against.
 */
MetricsReport compute_metrics(const TriMesh3& mesh, const UVMap& uv,
                              const std::vector<double>& phi,
                              const std::vector<double>& weight,
                              kernels::Backend backend = kernels::default_backend());

}  // namespace unfurl
