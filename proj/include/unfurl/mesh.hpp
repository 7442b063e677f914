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
#include <optional>
#include <vector>

#include "unfurl/errors.hpp"
#include "unfurl/geometry.hpp"

namespace unfurl
{

/** Relative threshold below which a face counts as degenerate (vs. mean area) */
constexpr double kDegenerateAreaEps = 1e-9;

/** @brief Grayscale raster used as a texture source (values in [0,1]) */
struct TextureImage {
    int width{0};
    int height{0};
    std::vector<double> pixels;  // row-major, width*height

    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

    /** Bilinear sample at normalized coordinates (u,v) in [0,1], clamped */
    double sample(double u, double v) const;
};

/** @brief Texture attached to a mesh: image plus per-vertex source coordinates */
struct MeshTexture {
    TextureImage image;
    std::vector<Vec2> source_uv;  // per-vertex, normalized into image
};

/**
 * @brief Immutable triangulated 3D surface patch
 *
 * Construction checks structural sanity (indices in range, no repeated
 * vertex within a face). Geometric and topological invariants (degenerate
 * faces, manifoldness, disk topology) are reported by validate() and
 * enforced by load_mesh(). All queries are pure; a constructed mesh is
 * safe to share across threads.
 */
class TriMesh3
{
public:
    TriMesh3(std::vector<Vec3> vertices, std::vector<Face> faces,
             std::optional<std::vector<double>> intensity = std::nullopt,
             std::optional<MeshTexture> texture = std::nullopt);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t face_count() const { return faces_.size(); }

    bool has_intensity() const { return intensity_.has_value(); }
    const std::vector<double>& intensity() const { return *intensity_; }

    bool has_texture() const { return texture_.has_value(); }
    const MeshTexture& texture() const { return *texture_; }

private:
    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    std::optional<std::vector<double>> intensity_;
    std::optional<MeshTexture> texture_;
};

/** @brief Result of checking the topological and geometric mesh invariants */
struct ValidationReport {
    int boundary_loop_count{0};
    std::vector<std::uint32_t> degenerate_face_ids;
    std::vector<std::array<std::uint32_t, 2>> non_manifold_edges;
    bool is_disk{false};
};

/**
 * @brief Index-based half-edge adjacency for a triangle mesh
 *
 * Half-edge h belongs to face h/3 and runs from faces[f][h%3] to
 * faces[f][(h%3+1)%3]. Twins are -1 on the boundary. Construction never
 * throws; pairing defects are collected in non_manifold_edges.
 */
struct MeshConnectivity {
    std::vector<std::int32_t> twin;          // per half-edge; -1 = boundary
    std::vector<std::int32_t> vertex_edge;   // one outgoing half-edge per vertex; -1 = isolated
    std::vector<std::array<std::uint32_t, 2>> non_manifold_edges;
    std::size_t face_count{0};

    static MeshConnectivity build(const TriMesh3& mesh);

    std::uint32_t origin(std::int32_t he, const TriMesh3& mesh) const
    {
        return mesh.faces()[he / 3][he % 3];
    }
    std::uint32_t target(std::int32_t he, const TriMesh3& mesh) const
    {
        return mesh.faces()[he / 3][(he % 3 + 1) % 3];
    }
    static std::int32_t next(std::int32_t he) { return he - he % 3 + (he % 3 + 1) % 3; }
    static std::int32_t prev(std::int32_t he) { return he - he % 3 + (he % 3 + 2) % 3; }

    bool vertex_on_boundary(std::uint32_t v) const;

    /**
     * Outgoing half-edges around an interior vertex, in rotation order.
     * Only valid for interior vertices of a manifold mesh.
     */
    std::vector<std::int32_t> wheel(std::uint32_t v) const;

    /** All boundary loops as ordered vertex lists, interior to the left. */
    std::vector<std::vector<std::uint32_t>> boundary_loops(const TriMesh3& mesh) const;
};

/** @brief Check all TriMesh3 invariants without mutating the mesh */
ValidationReport validate(const TriMesh3& mesh);

/**
 * @brief The mesh's single boundary loop, interior to the left
 *
 * The first element is the lowest-id boundary vertex.
 * @throws NotADisk if the mesh does not have exactly one boundary loop
 */
std::vector<std::uint32_t> boundary_loop(const TriMesh3& mesh);

/**
 * @brief Per-corner 3D interior angles, radians
 *
 * Entry 3*f + j is the angle of face f at vertex faces[f][j]. Angles of a
 * face sum to pi.
 */
std::vector<double> corner_angles_3d(const TriMesh3& mesh);

double face_area_3d(const TriMesh3& mesh, std::uint32_t face);

/** @brief Sum of face_area_3d over all faces, in face order */
double total_area_3d(const TriMesh3& mesh);

}  // namespace unfurl
