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

#include <string>

#include "unfurl/mesh.hpp"

namespace unfurl
{

/**
 * @brief Deterministic parametric test surfaces
 *
 * All generators produce an n x n vertex grid (2*(n-1)^2 faces, disk
 * topology) with a procedural stripe intensity pattern so texture
 * distortion is visually assessable.
 *
 * - plane: unit-spacing flat grid over [0, n-1]^2
 * - cylinder_sector: quarter cylinder, radius 1, height 1 (developable)
 * - hemisphere_cap: square patch of the unit sphere reaching the given
 *   polar angle at its corners (Gaussian curvature 1)
 * - ripple: plane with sinusoidal relief (mixed curvature)
 */
enum class SyntheticKind {
    Plane,
    CylinderSector,
    HemisphereCap,
    Ripple,
};

/** Parse "plane", "cylinder_sector", "hemisphere_cap", "ripple" */
SyntheticKind synthetic_kind_from_string(const std::string& name);
std::string to_string(SyntheticKind kind);

/** @brief Generate a synthetic mesh; n >= 2 is the vertex count per side */
TriMesh3 generate_synthetic(SyntheticKind kind, int n);

}  // namespace unfurl
