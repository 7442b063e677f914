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
#include "unfurl/uv_map.hpp"

namespace unfurl
{

std::string to_string(Algorithm a)
{
    switch (a) {
        case Algorithm::LSCM: return "LSCM";
        case Algorithm::ABF: return "ABF";
        case Algorithm::MM: return "MM";
    }
    return "?";
}

std::vector<std::uint32_t> detect_folds(const TriMesh3& mesh, const UVMap& uv)
{
    if (uv.uv.size() != mesh.vertex_count()) {
        throw LengthMismatch("UV count does not match vertex count");
    }
    const auto& faces = mesh.faces();
    std::vector<double> area(faces.size());
    std::size_t negative = 0;
    for (std::size_t f = 0; f < faces.size(); f++) {
        area[f] = signed_area(uv.uv[faces[f][0]], uv.uv[faces[f][1]], uv.uv[faces[f][2]]);
        if (area[f] < 0) {
            negative++;
        }
    }
    // Majority sign; an exact tie counts as positive.
    const double majority = negative * 2 > faces.size() ? -1.0 : 1.0;
    std::vector<std::uint32_t> folded;
    for (std::uint32_t f = 0; f < faces.size(); f++) {
        if (area[f] * majority < 0) {
            folded.push_back(f);
        }
    }
    return folded;
}

}  // namespace unfurl
