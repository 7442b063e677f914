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
#include "unfurl/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "internal/parallel_for.hpp"

namespace unfurl
{

namespace
{

/**
 * All sampling happens in local coordinates (UV minus the lower-left
 * corner), so translating the UV map does not change any arithmetic and
 * the image is reproduced exactly.
 */
struct Grid {
    int width;
    int height;
    Vec2 origin;  // absolute UV of the local frame's origin (metadata)
    double scale;

    Vec2 pixel_center_local(int x, int y) const
    {
        // Row 0 is the top of the image (largest v).
        return {(x + 0.5) / scale - 1.0 / scale,
                (height - 1 - y + 0.5) / scale - 1.0 / scale};
    }
    int row_of_local_v(double v) const
    {
        return height - 1 - static_cast<int>(std::floor(v * scale + 1.0));
    }
};

struct LocalUv {
    Grid grid;
    std::vector<Vec2> points;  // uv - (min_u, min_v)
};

LocalUv fit_grid(const UVMap& uv, double resolution)
{
    double min_u = std::numeric_limits<double>::infinity();
    double min_v = min_u;
    double max_u = -min_u;
    double max_v = -min_u;
    for (const auto& p : uv.uv) {
        min_u = std::min(min_u, p.x);
        min_v = std::min(min_v, p.y);
        max_u = std::max(max_u, p.x);
        max_v = std::max(max_v, p.y);
    }
    if (!(max_u >= min_u)) {
        throw EmptyParameterization("UV map has no vertices");
    }
    LocalUv out;
    out.points.reserve(uv.uv.size());
    for (const auto& p : uv.uv) {
        out.points.push_back({p.x - min_u, p.y - min_v});
    }
    auto& g = out.grid;
    g.scale = resolution;
    // One pixel of padding on every side; the small slack keeps the size
    // stable when a translated UV perturbs an exactly-integer extent.
    g.width = static_cast<int>(std::ceil((max_u - min_u) * resolution - 1e-9)) + 2;
    g.height = static_cast<int>(std::ceil((max_v - min_v) * resolution - 1e-9)) + 2;
    g.origin = {min_u - 1.0 / resolution, min_v - 1.0 / resolution};
    return out;
}

/**
 * Shared-edge tie rule: a pixel center on (or within rounding noise of) an
 * edge belongs to the face whose (CCW-oriented) edge direction is
 * lexicographically positive. Two faces meeting at an edge see opposite
 * directions, so exactly one claims the pixel; without the epsilon band,
 * solver noise in the UVs would let both (a fake fold) or neither (a one
 * pixel seam) claim centers that sit exactly on a shared edge.
 */
bool accept_boundary(const Vec2& dir)
{
    return dir.y > 0 || (dir.y == 0 && dir.x > 0);
}

struct EdgeFn {
    Vec2 start;
    Vec2 dir;
    double tol;   // on-edge band: |cross| below this counts as "on the edge"
    bool accept;  // tie-rule outcome for on-edge pixels
};

struct FaceGeom {
    EdgeFn edge[3];
};

FaceGeom face_geometry(const Vec2& a, const Vec2& b, const Vec2& c)
{
    const Vec2* v[3] = {&a, &b, &c};
    if (signed_area(a, b, c) < 0) {
        std::swap(v[1], v[2]);
    }
    const double max_len =
        std::max({norm(b - a), norm(c - b), norm(a - c)});
    FaceGeom g;
    for (int e = 0; e < 3; e++) {
        auto& fn = g.edge[e];
        fn.start = *v[e];
        fn.dir = *v[(e + 1) % 3] - *v[e];
        fn.tol = 1e-9 * norm(fn.dir) * max_len;
        fn.accept = accept_boundary(fn.dir);
    }
    return g;
}

bool covers(const FaceGeom& g, const Vec2& p)
{
    for (const auto& e : g.edge) {
        const double side = cross(e.dir, p - e.start);
        if (side < -e.tol || (side <= e.tol && !e.accept)) {
            return false;
        }
    }
    return true;
}

struct FillResult {
    Grid grid;
    std::vector<Vec2> local;           // UV shifted into the local frame
    std::vector<std::int32_t> winner;  // face id per pixel, -1 = background
    std::vector<std::uint8_t> count;   // covering faces, saturated at 255
    std::size_t fold_pixels{0};
};

FillResult fill(const TriMesh3& mesh, const UVMap& uv, double resolution,
                kernels::Backend backend)
{
    if (uv.uv.size() != mesh.vertex_count()) {
        throw LengthMismatch("UV count does not match vertex count");
    }
    if (mesh.face_count() == 0) {
        throw EmptyParameterization("mesh has no faces");
    }
    FillResult out;
    auto local = fit_grid(uv, resolution);
    out.grid = local.grid;
    out.local = std::move(local.points);
    const auto& g = out.grid;
    const auto npix = static_cast<std::size_t>(g.width) * g.height;
    out.winner.assign(npix, -1);
    out.count.assign(npix, 0);

    // Row bins: ascending face id per row keeps the fill order fixed.
    const auto& faces = mesh.faces();
    std::vector<std::vector<std::uint32_t>> rows(g.height);
    std::vector<double> priority(faces.size());
    std::vector<FaceGeom> geom(faces.size());
    for (std::uint32_t f = 0; f < faces.size(); f++) {
        priority[f] = face_area_3d(mesh, f);
        geom[f] = face_geometry(out.local[faces[f][0]], out.local[faces[f][1]],
                                out.local[faces[f][2]]);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (auto vid : faces[f]) {
            lo = std::min(lo, out.local[vid].y);
            hi = std::max(hi, out.local[vid].y);
        }
        const int y0 = std::clamp(g.row_of_local_v(hi), 0, g.height - 1);
        const int y1 = std::clamp(g.row_of_local_v(lo), 0, g.height - 1);
        for (int y = y0; y <= y1; y++) {
            rows[y].push_back(f);
        }
    }

    // Rows are independent; each row scans its faces in id order, so the
    // result does not depend on the backend or thread count.
    kernels::detail::parallel_for(backend, g.height, [&](std::int64_t y) {
        for (auto f : rows[y]) {
            const auto& face = faces[f];
            const auto& p0 = out.local[face[0]];
            const auto& p1 = out.local[face[1]];
            const auto& p2 = out.local[face[2]];
            double lo = std::min({p0.x, p1.x, p2.x});
            double hi = std::max({p0.x, p1.x, p2.x});
            int x0 = std::clamp(static_cast<int>(std::floor(lo * g.scale + 1.0)), 0,
                                g.width - 1);
            int x1 = std::clamp(static_cast<int>(std::floor(hi * g.scale + 1.0)), 0,
                                g.width - 1);
            for (int x = x0; x <= x1; x++) {
                if (!covers(geom[f], g.pixel_center_local(x, static_cast<int>(y)))) {
                    continue;
                }
                const auto idx = static_cast<std::size_t>(y) * g.width + x;
                if (out.count[idx] < 255) {
                    out.count[idx]++;
                }
                const auto prev = out.winner[idx];
                if (prev < 0 || priority[f] > priority[prev]) {
                    out.winner[idx] = static_cast<std::int32_t>(f);
                }
            }
        }
    });

    std::size_t covered = 0;
    for (std::size_t i = 0; i < npix; i++) {
        covered += out.winner[i] >= 0;
        out.fold_pixels += out.count[i] > 1;
    }
    if (covered == 0) {
        throw EmptyParameterization("no pixel is covered by any face");
    }
    return out;
}

/** Barycentric weights of p in the (possibly flipped) UV triangle */
std::array<double, 3> barycentric(const Vec2& a, const Vec2& b, const Vec2& c,
                                  const Vec2& p)
{
    const double area = signed_area(a, b, c);
    return {signed_area(p, b, c) / area, signed_area(a, p, c) / area,
            signed_area(a, b, p) / area};
}

std::uint8_t quantize(double v)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

TextureRaster rasterize_texture(const TriMesh3& mesh, const UVMap& uv, double resolution,
                                kernels::Backend backend)
{
    if (!mesh.has_intensity() && !mesh.has_texture()) {
        throw MissingTexture("mesh carries neither intensity nor a source texture");
    }
    if (!(resolution > 0)) {
        throw ConfigError("resolution must be positive");
    }
    auto filled = fill(mesh, uv, resolution, backend);
    const auto& g = filled.grid;

    TextureRaster out;
    out.image = RasterImage{g.width, g.height, 1,
                            std::vector<std::uint8_t>(filled.winner.size(), 0),
                            g.origin, g.scale};
    out.fold_mask = RasterImage{g.width, g.height, 1,
                                std::vector<std::uint8_t>(filled.winner.size(), 0),
                                g.origin, g.scale};
    out.fold_pixel_count = filled.fold_pixels;

    const auto& faces = mesh.faces();
    kernels::detail::parallel_for(backend, g.height, [&](std::int64_t y) {
        for (int x = 0; x < g.width; x++) {
            const auto idx = static_cast<std::size_t>(y) * g.width + x;
            if (filled.count[idx] > 1) {
                out.fold_mask.pixels[idx] = 255;
            }
            const auto f = filled.winner[idx];
            if (f < 0) {
                continue;
            }
            const auto& face = faces[f];
            const auto w =
                barycentric(filled.local[face[0]], filled.local[face[1]],
                            filled.local[face[2]],
                            g.pixel_center_local(x, static_cast<int>(y)));
            double value = 0;
            if (mesh.has_texture()) {
                const auto& tex = mesh.texture();
                Vec2 src{0, 0};
                for (int j = 0; j < 3; j++) {
                    src += w[j] * tex.source_uv[face[j]];
                }
                value = tex.image.sample(src.x, src.y);
            } else {
                for (int j = 0; j < 3; j++) {
                    value += w[j] * mesh.intensity()[face[j]];
                }
            }
            out.image.pixels[idx] = quantize(value);
        }
    });
    return out;
}

RasterImage heatmap(const TriMesh3& mesh, const UVMap& uv,
                    const std::vector<double>& per_face_values, double lo, double hi,
                    double resolution, kernels::Backend backend)
{
    if (per_face_values.size() != mesh.face_count()) {
        throw LengthMismatch("need exactly one value per face");
    }
    if (!(lo < hi)) {
        throw ConfigError("heatmap range requires lo < hi");
    }
    auto filled = fill(mesh, uv, resolution, backend);
    const auto& g = filled.grid;
    const auto& cmap = error_colormap();

    RasterImage img{g.width, g.height, 3,
                    std::vector<std::uint8_t>(filled.winner.size() * 3, 0),
                    g.origin, g.scale};
    kernels::detail::parallel_for(backend, g.height, [&](std::int64_t y) {
        for (int x = 0; x < g.width; x++) {
            const auto idx = static_cast<std::size_t>(y) * g.width + x;
            const auto f = filled.winner[idx];
            if (f < 0) {
                continue;
            }
            const double t =
                std::clamp((per_face_values[f] - lo) / (hi - lo), 0.0, 1.0);
            const auto& rgb = cmap[static_cast<std::size_t>(std::lround(t * 255.0))];
            img.pixels[idx * 3] = rgb[0];
            img.pixels[idx * 3 + 1] = rgb[1];
            img.pixels[idx * 3 + 2] = rgb[2];
        }
    });
    return img;
}

void write_ppm(const RasterImage& image, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << (image.channels == 3 ? "P6" : "P5") << "\n"
        << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
}

RasterImage read_ppm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P6") {
        throw ParseError(path.string() + ": not a binary PGM/PPM");
    }
    auto next_int = [&]() {
        // skip whitespace and '#' comments
        while (true) {
            int c = in.peek();
            if (c == '#') {
                std::string line;
                std::getline(in, line);
            } else if (std::isspace(c)) {
                in.get();
            } else {
                break;
            }
        }
        int v;
        if (!(in >> v)) {
            throw ParseError(path.string() + ": malformed header");
        }
        return v;
    };
    RasterImage img;
    img.width = next_int();
    img.height = next_int();
    const int maxval = next_int();
    if (maxval != 255) {
        throw ParseError(path.string() + ": only maxval 255 is supported");
    }
    in.get();  // single whitespace after maxval
    img.channels = magic == "P6" ? 3 : 1;
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * img.channels);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
        throw ParseError(path.string() + ": truncated pixel data");
    }
    return img;
}

}  // namespace unfurl
