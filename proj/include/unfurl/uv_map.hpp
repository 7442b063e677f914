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
#include <string>
#include <vector>

#include "unfurl/geometry.hpp"
#include "unfurl/mesh.hpp"

namespace unfurl
{

enum class Algorithm {
    LSCM,
    ABF,
    MM,
};

std::string to_string(Algorithm a);

/**
 * @brief Per-vertex 2D parameter coordinates sharing the source mesh's
 * connectivity
 */
struct UVMap {
    std::vector<Vec2> uv;
    Algorithm tag{Algorithm::LSCM};

    bool all_finite() const
    {
        for (const auto& p : uv) {
            if (!is_finite(p)) {
                return false;
            }
        }
        return true;
    }
};

/**
 * @brief Faces whose 2D orientation opposes the mesh majority
 *
 * The majority sign is the more frequent sign of the 2D signed face areas
 * (ties count as positive). An empty result means no folds.
 */
std::vector<std::uint32_t> detect_folds(const TriMesh3& mesh, const UVMap& uv);

}  // namespace unfurl
