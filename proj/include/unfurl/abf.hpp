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
#include <vector>

#include "unfurl/mesh.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

/** Angles are kept inside [kAngleClamp, pi - kAngleClamp] */
constexpr double kAngleClamp = 1e-5;

/**
 * @brief Per-corner angle state for angle-based flattening
 *
 * Corner 3*f + j sits at vertex faces[f][j]. beta are the 3D angles, phi
 * the optimal (target) angles, alpha the solved parameter-space angles,
 * and weight the per-corner objective weights (phi^-2).
 */
struct AngleSet {
    std::vector<double> beta;
    std::vector<double> phi;
    std::vector<double> alpha;
    std::vector<double> weight;
};

/** @brief Outcome of the constrained angle solve */
struct AbfSolution {
    AngleSet angles;
    double constraint_residual_inf{0};
    double gradient_inf{0};
    int iterations{0};
    bool converged{false};
};

/** @brief Options for abf_solve */
struct AbfOptions {
    double tol{1e-7};
    int max_iter{100};
};

/**
 * @brief Optimal angles: 3D angles rescaled to a flat vertex neighborhood
 *
 * Interior corners are scaled by 2*pi over the incident beta sum; boundary
 * corners keep beta. Results are clamped to [kAngleClamp, pi-kAngleClamp].
 */
std::vector<double> optimal_angles(const std::vector<double>& beta, const TriMesh3& mesh);

/**
 * @brief Solve for parameter-space angles minimizing the weighted deviation
 * from the optimal angles
 *
 * Minimizes sum_corners w*(alpha-phi)^2 subject to, per face, angles
 * summing to pi; per interior vertex, incident angles summing to 2*pi; and
 * per interior vertex, the sine-product reconstruction constraint. Solved
 * by damped Lagrange-Newton iteration on the full KKT system. Convergence
 * requires both the constraint residual and the stationarity gradient to
 * reach tol in the infinity norm; a non-converged run is returned with
 * converged = false.
 *
 * @throws SolverFailure only on hard failures (singular KKT factorization,
 * non-finite iterates)
 * @throws NotADisk
 */
AbfSolution abf_solve(const TriMesh3& mesh, const std::vector<double>& phi,
                      const std::vector<double>& weight, const AbfOptions& opts = {});

/** @brief One vertex placement that disagreed with an earlier placement */
struct PlacementWarning {
    std::uint32_t vertex;
    std::uint32_t face;
    double deviation;
};

/** @brief UV map plus reconstruction diagnostics */
struct AbfUvResult {
    UVMap uv;
    /** Non-fatal: revisited vertices that landed away from their first placement */
    std::vector<PlacementWarning> inconsistent_angles;
};

/**
 * @brief Rebuild UV coordinates from solved angles and one placed boundary
 * edge
 *
 * The edge's endpoints go to (0,0) and (L,0) with L its 3D length; faces
 * are placed breadth-first across shared edges by the law of sines. Every
 * vertex keeps its first-visit coordinate; revisits that land further than
 * 1e-3*L from it are reported in inconsistent_angles.
 */
AbfUvResult reconstruct_uv(const TriMesh3& mesh, const AngleSet& angles,
                           std::array<std::uint32_t, 2> scale_edge);

/**
 * @brief Full pipeline: 3D angles -> optimal angles -> solve -> reconstruct
 *
 * The scale edge is the first edge of the boundary loop.
 * @throws SolverFailure when the angle solve does not converge
 */
AbfUvResult abf_flatten(const TriMesh3& mesh, const AbfOptions& opts = {},
                        AbfSolution* solution_out = nullptr);

}  // namespace unfurl
