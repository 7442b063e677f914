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

#include "unfurl/mesh.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

/** @brief Two pinned boundary vertices with their target UV positions */
struct PinPair {
    std::uint32_t a;
    std::uint32_t b;
    Vec2 pos_a;
    Vec2 pos_b;
};

/**
 * @brief Pick the boundary vertex pair at maximal Euclidean separation
 *
 * Pins are placed at (0,0) and (d,0) where d is the pair's 3D distance.
 * Near-ties (within 1e-9 relative) resolve to the lowest (a,b) id pair, so
 * the choice is stable under rigid motion of the mesh.
 *
 * @throws NotADisk
 */
PinPair select_pins(const TriMesh3& mesh);

/**
 * @brief Least Squares Conformal Map with two pinned vertices
 *
 * Minimizes the per-triangle deviation of the UV map from a similarity
 * transform, summed over the mesh, subject to the pins. The normal
 * equations are solved by sparse Cholesky; the solution is accepted only
 * if the normal-equation gradient satisfies
 * ||A^T(Ax-b)||_inf <= 1e-8 * max(1, ||A^T b||_inf).
 *
 * @throws SolverFailure on a singular or non-converged system
 * @throws NotADisk
 */
UVMap lscm_flatten(const TriMesh3& mesh, const PinPair& pins);

/** select_pins + lscm_flatten */
UVMap lscm_flatten(const TriMesh3& mesh);

/**
 * @brief Conformal energy of a UV assignment (the LSCM objective)
 *
 * Zero exactly when every face maps by a similarity transform.
 */
double conformal_energy(const TriMesh3& mesh, const UVMap& uv);

}  // namespace unfurl
