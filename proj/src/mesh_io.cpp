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
#include "unfurl/mesh_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "unfurl/raster.hpp"

namespace unfurl
{

namespace
{

std::string lowercase(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::optional<std::vector<double>> load_intensity_sidecar(
    const std::filesystem::path& path, std::size_t vertex_count)
{
    auto sidecar = path;
    sidecar += ".intensity";
    if (!std::filesystem::exists(sidecar)) {
        return std::nullopt;
    }
    std::ifstream in(sidecar);
    std::vector<double> values;
    double v{};
    while (in >> v) {
        values.push_back(v);
    }
    if (values.size() != vertex_count) {
        throw ParseError(sidecar.string() + ": expected " +
                         std::to_string(vertex_count) + " scalars, found " +
                         std::to_string(values.size()));
    }
    return values;
}

std::optional<TextureImage> load_texture_sidecar(const std::filesystem::path& path)
{
    auto sidecar = path;
    sidecar += ".texture.pgm";
    if (!std::filesystem::exists(sidecar)) {
        return std::nullopt;
    }
    auto raster = read_ppm(sidecar);
    TextureImage img;
    img.width = raster.width;
    img.height = raster.height;
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    for (std::size_t i = 0; i < img.pixels.size(); i++) {
        // RGB sidecars collapse to luminance-free average gray
        double sum = 0;
        for (int c = 0; c < raster.channels; c++) {
            sum += raster.pixels[i * raster.channels + c];
        }
        img.pixels[i] = sum / raster.channels / 255.0;
    }
    return img;
}

struct ParsedMesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    std::optional<std::vector<double>> intensity;
    std::vector<Vec2> per_vertex_uv;  // empty if absent
};

ParsedMesh parse_obj(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    ParsedMesh mesh;
    std::vector<Vec2> vt;
    std::vector<double> colors;
    bool any_color = false;
    std::vector<std::array<std::int64_t, 3>> face_vt;  // vt index per face corner, -1 none

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) {
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": malformed vertex");
            }
            double r, g, b;
            if (ls >> r >> g >> b) {
                colors.resize(mesh.vertices.size(), 0.0);
                colors.push_back((r + g + b) / 3.0);
                any_color = true;
            } else if (any_color) {
                colors.push_back(0.0);
            }
            mesh.vertices.push_back(p);
        } else if (tag == "vt") {
            Vec2 p;
            if (!(ls >> p.x >> p.y)) {
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": malformed texture coordinate");
            }
            vt.push_back(p);
        } else if (tag == "f") {
            std::vector<std::int64_t> vids;
            std::vector<std::int64_t> tids;
            std::string corner;
            while (ls >> corner) {
                std::int64_t vi = 0;
                std::int64_t ti = -1;
                auto slash = corner.find('/');
                try {
                    vi = std::stoll(corner.substr(0, slash));
                    if (slash != std::string::npos) {
                        auto rest = corner.substr(slash + 1);
                        auto slash2 = rest.find('/');
                        auto t = rest.substr(0, slash2);
                        if (!t.empty()) {
                            ti = std::stoll(t);
                        }
                    }
                } catch (const std::exception&) {
                    throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                     ": malformed face corner '" + corner + "'");
                }
                if (vi <= 0 || (ti != -1 && ti <= 0)) {
                    throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                     ": only positive 1-based indices supported");
                }
                vids.push_back(vi - 1);
                tids.push_back(ti == -1 ? -1 : ti - 1);
            }
            if (vids.size() != 3) {
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": faces must be triangles");
            }
            Face f;
            for (int j = 0; j < 3; j++) {
                if (vids[j] >= static_cast<std::int64_t>(mesh.vertices.size())) {
                    throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                     ": face references missing vertex");
                }
                f[j] = static_cast<std::uint32_t>(vids[j]);
            }
            mesh.faces.push_back(f);
            face_vt.push_back({tids[0], tids[1], tids[2]});
        }
        // vn, o, g, s, usemtl, mtllib: ignored
    }

    if (any_color) {
        mesh.intensity = std::move(colors);
    }
    if (!vt.empty()) {
        mesh.per_vertex_uv.assign(mesh.vertices.size(), Vec2{0, 0});
        for (std::size_t f = 0; f < mesh.faces.size(); f++) {
            for (int j = 0; j < 3; j++) {
                auto ti = face_vt[f][j];
                if (ti < 0) {
                    continue;
                }
                if (ti >= static_cast<std::int64_t>(vt.size())) {
                    throw ParseError(path.string() + ": face references missing vt");
                }
                mesh.per_vertex_uv[mesh.faces[f][j]] = vt[ti];
            }
        }
    }
    return mesh;
}

// --- PLY ---

enum class PlyScalar { I8, U8, I16, U16, I32, U32, F32, F64 };

std::size_t scalar_size(PlyScalar s)
{
    switch (s) {
        case PlyScalar::I8:
        case PlyScalar::U8:
            return 1;
        case PlyScalar::I16:
        case PlyScalar::U16:
            return 2;
        case PlyScalar::I32:
        case PlyScalar::U32:
        case PlyScalar::F32:
            return 4;
        case PlyScalar::F64:
            return 8;
    }
    return 0;
}

PlyScalar parse_scalar_type(const std::string& t, const std::string& ctx)
{
    if (t == "char" || t == "int8") return PlyScalar::I8;
    if (t == "uchar" || t == "uint8") return PlyScalar::U8;
    if (t == "short" || t == "int16") return PlyScalar::I16;
    if (t == "ushort" || t == "uint16") return PlyScalar::U16;
    if (t == "int" || t == "int32") return PlyScalar::I32;
    if (t == "uint" || t == "uint32") return PlyScalar::U32;
    if (t == "float" || t == "float32") return PlyScalar::F32;
    if (t == "double" || t == "float64") return PlyScalar::F64;
    throw ParseError(ctx + ": unknown PLY type '" + t + "'");
}

double read_binary_scalar(std::istream& in, PlyScalar type, const std::string& ctx)
{
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), scalar_size(type));
    if (!in) {
        throw ParseError(ctx + ": unexpected end of binary data");
    }
    // Little-endian payload on a little-endian host.
    switch (type) {
        case PlyScalar::I8: return static_cast<double>(static_cast<std::int8_t>(buf[0]));
        case PlyScalar::U8: return static_cast<double>(buf[0]);
        case PlyScalar::I16: {
            std::int16_t v;
            std::memcpy(&v, buf, 2);
            return v;
        }
        case PlyScalar::U16: {
            std::uint16_t v;
            std::memcpy(&v, buf, 2);
            return v;
        }
        case PlyScalar::I32: {
            std::int32_t v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyScalar::U32: {
            std::uint32_t v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyScalar::F32: {
            float v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyScalar::F64: {
            double v;
            std::memcpy(&v, buf, 8);
            return v;
        }
    }
    return 0;
}

struct PlyProperty {
    std::string name;
    bool is_list{false};
    PlyScalar type{PlyScalar::F32};
    PlyScalar count_type{PlyScalar::U8};
};

struct PlyElement {
    std::string name;
    std::size_t count{0};
    std::vector<PlyProperty> properties;
};

ParsedMesh parse_ply(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.substr(0, 3) != "ply") {
        throw ParseError(path.string() + ": missing 'ply' magic");
    }
    bool binary = false;
    std::vector<PlyElement> elements;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "comment" || tag == "obj_info" || tag.empty()) {
            continue;
        }
        if (tag == "format") {
            std::string fmt;
            ls >> fmt;
            if (fmt == "ascii") {
                binary = false;
            } else if (fmt == "binary_little_endian") {
                binary = true;
            } else {
                throw ParseError(path.string() + ": unsupported PLY format " + fmt);
            }
        } else if (tag == "element") {
            PlyElement e;
            ls >> e.name >> e.count;
            elements.push_back(e);
        } else if (tag == "property") {
            if (elements.empty()) {
                throw ParseError(path.string() + ": property before element");
            }
            std::string t;
            ls >> t;
            PlyProperty p;
            if (t == "list") {
                std::string ct, vt2;
                ls >> ct >> vt2 >> p.name;
                p.is_list = true;
                p.count_type = parse_scalar_type(ct, path.string());
                p.type = parse_scalar_type(vt2, path.string());
            } else {
                p.type = parse_scalar_type(t, path.string());
                ls >> p.name;
            }
            elements.back().properties.push_back(p);
        } else if (tag == "end_header") {
            break;
        } else {
            throw ParseError(path.string() + ": unexpected header line '" + line + "'");
        }
    }

    auto read_scalar = [&](PlyScalar type) -> double {
        if (binary) {
            return read_binary_scalar(in, type, path.string());
        }
        double v;
        if (!(in >> v)) {
            throw ParseError(path.string() + ": unexpected end of ASCII data");
        }
        return v;
    };

    ParsedMesh mesh;
    std::vector<double> reds, greens, blues;
    for (const auto& elem : elements) {
        if (elem.name == "vertex") {
            for (std::size_t i = 0; i < elem.count; i++) {
                Vec3 pos;
                double r = -1, g = -1, b = -1;
                for (const auto& p : elem.properties) {
                    if (p.is_list) {
                        throw ParseError(path.string() + ": list property on vertices");
                    }
                    auto v = read_scalar(p.type);
                    if (p.name == "x") pos.x = v;
                    else if (p.name == "y") pos.y = v;
                    else if (p.name == "z") pos.z = v;
                    else if (p.name == "red") r = v;
                    else if (p.name == "green") g = v;
                    else if (p.name == "blue") b = v;
                    // anything else: parsed and dropped
                }
                mesh.vertices.push_back(pos);
                if (r >= 0) {
                    reds.push_back(r);
                    greens.push_back(g >= 0 ? g : r);
                    blues.push_back(b >= 0 ? b : r);
                }
            }
        } else if (elem.name == "face") {
            for (std::size_t i = 0; i < elem.count; i++) {
                for (const auto& p : elem.properties) {
                    if (!p.is_list) {
                        read_scalar(p.type);
                        continue;
                    }
                    auto n = static_cast<std::size_t>(read_scalar(p.count_type));
                    if (n != 3) {
                        throw ParseError(path.string() + ": faces must be triangles");
                    }
                    Face f;
                    for (int j = 0; j < 3; j++) {
                        auto idx = read_scalar(p.type);
                        if (idx < 0 || idx >= static_cast<double>(mesh.vertices.size())) {
                            throw ParseError(path.string() + ": face index out of range");
                        }
                        f[j] = static_cast<std::uint32_t>(idx);
                    }
                    mesh.faces.push_back(f);
                }
            }
        } else {
            // skip unknown element payload
            for (std::size_t i = 0; i < elem.count; i++) {
                for (const auto& p : elem.properties) {
                    if (p.is_list) {
                        auto n = static_cast<std::size_t>(read_scalar(p.count_type));
                        for (std::size_t j = 0; j < n; j++) {
                            read_scalar(p.type);
                        }
                    } else {
                        read_scalar(p.type);
                    }
                }
            }
        }
    }
    if (!reds.empty() && reds.size() == mesh.vertices.size()) {
        std::vector<double> intensity(reds.size());
        for (std::size_t i = 0; i < reds.size(); i++) {
            intensity[i] = (reds[i] + greens[i] + blues[i]) / 3.0 / 255.0;
        }
        mesh.intensity = std::move(intensity);
    }
    return mesh;
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path)
{
    auto ext = lowercase(path.extension().string());
    if (ext == ".obj") {
        return MeshFormat::OBJ;
    }
    if (ext == ".ply") {
        return MeshFormat::PLY;
    }
    throw ParseError("unrecognized mesh extension: " + path.string());
}

TriMesh3 load_mesh(const std::filesystem::path& path, MeshFormat format)
{
    if (!std::filesystem::exists(path)) {
        throw ParseError("no such file: " + path.string());
    }
    auto parsed = format == MeshFormat::OBJ ? parse_obj(path) : parse_ply(path);

    auto intensity = parsed.intensity;
    if (auto sidecar = load_intensity_sidecar(path, parsed.vertices.size())) {
        intensity = std::move(sidecar);
    }
    std::optional<MeshTexture> texture;
    if (!parsed.per_vertex_uv.empty()) {
        if (auto img = load_texture_sidecar(path)) {
            texture = MeshTexture{std::move(*img), parsed.per_vertex_uv};
        }
    }

    TriMesh3 mesh(std::move(parsed.vertices), std::move(parsed.faces),
                  std::move(intensity), std::move(texture));

    auto report = validate(mesh);
    if (!report.degenerate_face_ids.empty()) {
        throw InvalidMesh(path.string() + ": " +
                              std::to_string(report.degenerate_face_ids.size()) +
                              " degenerate face(s), first id " +
                              std::to_string(report.degenerate_face_ids.front()),
                          report.degenerate_face_ids, report.boundary_loop_count);
    }
    if (!report.is_disk) {
        throw InvalidMesh(path.string() + ": not a disk (" +
                              std::to_string(report.boundary_loop_count) +
                              " boundary loops, " +
                              std::to_string(report.non_manifold_edges.size()) +
                              " non-manifold edges)",
                          {}, report.boundary_loop_count);
    }
    return mesh;
}

TriMesh3 load_mesh(const std::filesystem::path& path)
{
    return load_mesh(path, format_from_path(path));
}

namespace
{

void write_obj_impl(const TriMesh3& mesh, const UVMap* uv,
                    const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    char buf[256];
    const bool color = mesh.has_intensity();
    for (std::size_t i = 0; i < mesh.vertex_count(); i++) {
        const auto& v = mesh.vertices()[i];
        if (color) {
            auto c = mesh.intensity()[i];
            std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g %.17g %.17g %.17g\n",
                          v.x, v.y, v.z, c, c, c);
        } else {
            std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        }
        out << buf;
    }
    if (uv) {
        for (const auto& p : uv->uv) {
            std::snprintf(buf, sizeof(buf), "vt %.17g %.17g\n", p.x, p.y);
            out << buf;
        }
    }
    for (const auto& f : mesh.faces()) {
        if (uv) {
            std::snprintf(buf, sizeof(buf), "f %u/%u %u/%u %u/%u\n", f[0] + 1, f[0] + 1,
                          f[1] + 1, f[1] + 1, f[2] + 1, f[2] + 1);
        } else {
            std::snprintf(buf, sizeof(buf), "f %u %u %u\n", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        out << buf;
    }
}

}  // namespace

void save_obj(const TriMesh3& mesh, const std::filesystem::path& path)
{
    write_obj_impl(mesh, nullptr, path);
}

void save_obj(const TriMesh3& mesh, const UVMap& uv, const std::filesystem::path& path)
{
    if (uv.uv.size() != mesh.vertex_count()) {
        throw LengthMismatch("UV count does not match vertex count");
    }
    write_obj_impl(mesh, &uv, path);
}

}  // namespace unfurl
