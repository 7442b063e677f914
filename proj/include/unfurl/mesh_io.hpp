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

#include <filesystem>
#include <string>

#include "unfurl/mesh.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

enum class MeshFormat {
    OBJ,
    PLY,
};

/** Guess the format from the file extension (.obj/.ply) */
MeshFormat format_from_path(const std::filesystem::path& path);

/**
 * @brief Load and validate a triangulated surface patch
 *
 * OBJ vertices may carry colors ("v x y z r g b"); equal channels become
 * per-vertex intensity. A sidecar "<file>.intensity" (one scalar per line)
 * also provides intensity. OBJ files with vt records plus a sidecar
 * "<stem>.texture.pgm" load a source texture. PLY supports ASCII and
 * binary_little_endian with optional uchar red/green/blue.
 *
 * @throws ParseError on malformed input
 * @throws InvalidMesh when a TriMesh3 invariant fails (degenerate faces,
 * non-manifold edges, not a topological disk)
 */
TriMesh3 load_mesh(const std::filesystem::path& path, MeshFormat format);

/** @brief Load, guessing the format from the extension */
TriMesh3 load_mesh(const std::filesystem::path& path);

/**
 * @brief Write a mesh as OBJ
 *
 * Vertex coordinates are printed with 17 significant digits so a
 * write/read round trip reproduces identical doubles. Intensity is written
 * as vertex colors with r = g = b.
 */
void save_obj(const TriMesh3& mesh, const std::filesystem::path& path);

/** @brief Write a mesh plus UV coordinates as OBJ with vt records */
void save_obj(const TriMesh3& mesh, const UVMap& uv, const std::filesystem::path& path);

}  // namespace unfurl
