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
#include "unfurl/mesh.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "unfurl/kernels.hpp"

namespace unfurl
{

double TextureImage::sample(double u, double v) const
{
    auto fx = std::clamp(u, 0.0, 1.0) * (width - 1);
    auto fy = std::clamp(v, 0.0, 1.0) * (height - 1);
    auto x0 = static_cast<int>(fx);
    auto y0 = static_cast<int>(fy);
    auto x1 = std::min(x0 + 1, width - 1);
    auto y1 = std::min(y0 + 1, height - 1);
    auto tx = fx - x0;
    auto ty = fy - y0;
    auto top = at(x0, y0) * (1 - tx) + at(x1, y0) * tx;
    auto bot = at(x0, y1) * (1 - tx) + at(x1, y1) * tx;
    return top * (1 - ty) + bot * ty;
}

TriMesh3::TriMesh3(std::vector<Vec3> vertices, std::vector<Face> faces,
                   std::optional<std::vector<double>> intensity,
                   std::optional<MeshTexture> texture)
    : vertices_(std::move(vertices))
    , faces_(std::move(faces))
    , intensity_(std::move(intensity))
    , texture_(std::move(texture))
{
    const auto n = vertices_.size();
    for (std::size_t f = 0; f < faces_.size(); f++) {
        const auto& face = faces_[f];
        for (auto idx : face) {
            if (idx >= n) {
                throw InvalidMesh("face " + std::to_string(f) +
                                  " references vertex " + std::to_string(idx) +
                                  " out of range");
            }
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
            throw InvalidMesh("face " + std::to_string(f) + " repeats a vertex");
        }
    }
    if (intensity_ && intensity_->size() != n) {
        throw InvalidMesh("intensity count does not match vertex count");
    }
    if (texture_ && texture_->source_uv.size() != n) {
        throw InvalidMesh("texture source UV count does not match vertex count");
    }
}

MeshConnectivity MeshConnectivity::build(const TriMesh3& mesh)
{
    MeshConnectivity conn;
    const auto& faces = mesh.faces();
    conn.face_count = faces.size();
    conn.twin.assign(faces.size() * 3, -1);
    conn.vertex_edge.assign(mesh.vertex_count(), -1);

    // Directed edge -> half-edge id. A directed edge seen twice means two
    // faces with the same winding share it; that edge is non-manifold.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int32_t> directed;
    auto flag_non_manifold = [&](std::uint32_t a, std::uint32_t b) {
        std::array<std::uint32_t, 2> e{std::min(a, b), std::max(a, b)};
        if (std::find(conn.non_manifold_edges.begin(), conn.non_manifold_edges.end(), e) ==
            conn.non_manifold_edges.end()) {
            conn.non_manifold_edges.push_back(e);
        }
    };

    for (std::size_t f = 0; f < faces.size(); f++) {
        for (int j = 0; j < 3; j++) {
            auto he = static_cast<std::int32_t>(3 * f + j);
            auto a = faces[f][j];
            auto b = faces[f][(j + 1) % 3];
            if (conn.vertex_edge[a] < 0) {
                conn.vertex_edge[a] = he;
            }
            auto [it, inserted] = directed.try_emplace({a, b}, he);
            if (!inserted) {
                flag_non_manifold(a, b);
                continue;
            }
            auto rev = directed.find({b, a});
            if (rev != directed.end()) {
                auto other = rev->second;
                if (conn.twin[other] != -1) {
                    flag_non_manifold(a, b);
                    continue;
                }
                conn.twin[he] = other;
                conn.twin[other] = he;
            }
        }
    }
    return conn;
}

bool MeshConnectivity::vertex_on_boundary(std::uint32_t v) const
{
    auto start = vertex_edge[v];
    if (start < 0) {
        return true;  // isolated
    }
    auto e = start;
    do {
        if (twin[e] < 0) {
            return true;
        }
        e = next(twin[e]);
    } while (e != start);
    return false;
}

std::vector<std::int32_t> MeshConnectivity::wheel(std::uint32_t v) const
{
    std::vector<std::int32_t> out;
    auto start = vertex_edge[v];
    auto e = start;
    do {
        out.push_back(e);
        e = next(twin[e]);
    } while (e != start);
    return out;
}

std::vector<std::vector<std::uint32_t>> MeshConnectivity::boundary_loops(
    const TriMesh3& mesh) const
{
    // Walk unpaired half-edges; the successor of a boundary half-edge a->b
    // is found by rotating around b until the outgoing boundary edge shows
    // up. This splits loops correctly at bowtie vertices.
    std::vector<std::vector<std::uint32_t>> loops;
    std::vector<bool> seen(twin.size(), false);
    for (std::size_t h = 0; h < twin.size(); h++) {
        if (twin[h] != -1 || seen[h]) {
            continue;
        }
        std::vector<std::uint32_t> loop;
        auto e = static_cast<std::int32_t>(h);
        std::size_t guard = 0;
        do {
            seen[e] = true;
            loop.push_back(origin(e, mesh));
            auto nx = next(e);
            while (twin[nx] != -1) {
                nx = next(twin[nx]);
            }
            e = nx;
        } while (e != static_cast<std::int32_t>(h) && ++guard <= twin.size());
        loops.push_back(std::move(loop));
    }
    return loops;
}

ValidationReport validate(const TriMesh3& mesh)
{
    ValidationReport report;

    // Degenerate faces, relative to the mean face area.
    const auto nf = mesh.face_count();
    std::vector<double> areas(nf);
    double total = 0;
    for (std::uint32_t f = 0; f < nf; f++) {
        areas[f] = face_area_3d(mesh, f);
        total += areas[f];
    }
    const double mean = nf > 0 ? total / static_cast<double>(nf) : 0.0;
    for (std::uint32_t f = 0; f < nf; f++) {
        if (areas[f] < kDegenerateAreaEps * mean) {
            report.degenerate_face_ids.push_back(f);
        }
    }

    auto conn = MeshConnectivity::build(mesh);
    report.non_manifold_edges = conn.non_manifold_edges;
    report.boundary_loop_count = static_cast<int>(conn.boundary_loops(mesh).size());
    report.is_disk = report.boundary_loop_count == 1 && report.non_manifold_edges.empty();
    return report;
}

std::vector<std::uint32_t> boundary_loop(const TriMesh3& mesh)
{
    auto conn = MeshConnectivity::build(mesh);
    auto loops = conn.boundary_loops(mesh);
    if (loops.size() != 1 || !conn.non_manifold_edges.empty()) {
        throw NotADisk("mesh has " + std::to_string(loops.size()) +
                       " boundary loops and " +
                       std::to_string(conn.non_manifold_edges.size()) +
                       " non-manifold edges");
    }
    auto& loop = loops.front();

    // Rotate so the lowest vertex id comes first.
    auto lowest = std::min_element(loop.begin(), loop.end());
    std::rotate(loop.begin(), lowest, loop.end());
    return loop;
}

std::vector<double> corner_angles_3d(const TriMesh3& mesh)
{
    std::vector<double> angles(mesh.face_count() * 3);
    kernels::corner_angles(mesh.vertices(), mesh.faces(), angles,
                           kernels::default_backend());
    return angles;
}

double face_area_3d(const TriMesh3& mesh, std::uint32_t face)
{
    const auto& f = mesh.faces()[face];
    const auto& v = mesh.vertices();
    return triangle_area(v[f[0]], v[f[1]], v[f[2]]);
}

double total_area_3d(const TriMesh3& mesh)
{
    double total = 0;
    for (std::uint32_t f = 0; f < mesh.face_count(); f++) {
        total += face_area_3d(mesh, f);
    }
    return total;
}

}  // namespace unfurl
