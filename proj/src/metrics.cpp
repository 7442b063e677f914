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
#include "unfurl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace unfurl
{

namespace
{

double total_area_2d_abs(const TriMesh3& mesh, const UVMap& uv)
{
    double total = 0;
    for (const auto& f : mesh.faces()) {
        total += std::abs(signed_area(uv.uv[f[0]], uv.uv[f[1]], uv.uv[f[2]]));
    }
    return total;
}

/**
 * Runs the stretch kernel and rejects (near-)zero 2D faces against the
 * relative floor of 1e-12 * mean |2D area|.
 */
std::vector<kernels::FaceStretch> checked_face_stretch(const TriMesh3& mesh,
                                                       const UVMap& uv,
                                                       kernels::Backend backend)
{
    if (uv.uv.size() != mesh.vertex_count()) {
        throw LengthMismatch("UV count does not match vertex count");
    }
    std::vector<kernels::FaceStretch> stretch(mesh.face_count());
    kernels::face_stretch(mesh.vertices(), uv.uv, mesh.faces(), stretch, backend);

    double mean_abs = 0;
    for (const auto& s : stretch) {
        mean_abs += std::abs(s.area_2d_signed);
    }
    mean_abs /= std::max<std::size_t>(1, stretch.size());
    std::vector<std::uint32_t> degenerate;
    for (std::uint32_t f = 0; f < stretch.size(); f++) {
        if (!(std::abs(stretch[f].area_2d_signed) > 1e-12 * mean_abs)) {
            degenerate.push_back(f);
        }
    }
    if (!degenerate.empty()) {
        throw DegenerateParameterization(
            std::to_string(degenerate.size()) + " face(s) with (near-)zero 2D area",
            degenerate);
    }
    return stretch;
}

double l2_from(const std::vector<kernels::FaceStretch>& stretch)
{
    double num = 0;
    double den = 0;
    for (const auto& s : stretch) {
        const double l2sq = 0.5 * (s.sigma_max * s.sigma_max + s.sigma_min * s.sigma_min);
        num += l2sq * s.area_3d;
        den += s.area_3d;
    }
    return std::sqrt(num / den);
}

double linf_from(const std::vector<kernels::FaceStretch>& stretch)
{
    double worst = 0;
    for (const auto& s : stretch) {
        worst = std::max(worst, s.sigma_max);
    }
    return worst;
}

}  // namespace

UVMap normalize_scale(const UVMap& uv, const TriMesh3& mesh, double* factor_out)
{
    if (uv.uv.size() != mesh.vertex_count()) {
        throw LengthMismatch("UV count does not match vertex count");
    }
    const double area2 = total_area_2d_abs(mesh, uv);
    if (!(area2 > 0)) {
        throw DegenerateParameterization("total 2D area is zero");
    }
    const double factor = std::sqrt(total_area_3d(mesh) / area2);
    UVMap out = uv;
    for (auto& p : out.uv) {
        p *= factor;
    }
    if (factor_out) {
        *factor_out = factor;
    }
    return out;
}

TriangleStretch triangle_stretch(const Vec3& q1, const Vec3& q2, const Vec3& q3,
                                 const Vec2& p1, const Vec2& p2, const Vec2& p3,
                                 double area_floor)
{
    const double area = signed_area(p1, p2, p3);
    if (!(std::abs(area) > area_floor)) {
        throw DegenerateParameterization("2D triangle area is (near) zero");
    }
    const double s1 = p1.x, t1 = p1.y;
    const double s2 = p2.x, t2 = p2.y;
    const double s3 = p3.x, t3 = p3.y;
    const double inv = 1.0 / (2.0 * area);
    const auto ss = inv * (q1 * (t2 - t3) + q2 * (t3 - t1) + q3 * (t1 - t2));
    const auto st = inv * (q1 * (s3 - s2) + q2 * (s1 - s3) + q3 * (s2 - s1));
    const double a = dot(ss, ss);
    const double b = dot(ss, st);
    const double c = dot(st, st);
    const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
    TriangleStretch out;
    out.sigma_max = std::sqrt(std::max(0.0, 0.5 * (a + c + disc)));
    out.sigma_min = std::sqrt(std::max(0.0, 0.5 * (a + c - disc)));
    out.l2 = std::sqrt(0.5 * (a + c));
    out.linf = out.sigma_max;
    return out;
}

double l2_mesh(const TriMesh3& mesh, const UVMap& uv, kernels::Backend backend)
{
    return l2_from(checked_face_stretch(mesh, uv, backend));
}

double linf_mesh(const TriMesh3& mesh, const UVMap& uv, kernels::Backend backend)
{
    return linf_from(checked_face_stretch(mesh, uv, backend));
}

std::pair<double, double> angular_error(const std::vector<double>& phi,
                                        const std::vector<double>& alpha,
                                        const std::vector<double>& weight)
{
    if (phi.size() != alpha.size() || phi.size() != weight.size()) {
        throw LengthMismatch("angle arrays differ in length");
    }
    double f_alpha = 0;
    for (std::size_t c = 0; c < phi.size(); c++) {
        const double d = alpha[c] - phi[c];
        f_alpha += weight[c] * d * d;
    }
    return {f_alpha, f_alpha / static_cast<double>(phi.size())};
}

std::pair<std::vector<double>, double> area_error(const TriMesh3& mesh, const UVMap& uv)
{
    if (uv.uv.size() != mesh.vertex_count()) {
        throw LengthMismatch("UV count does not match vertex count");
    }
    const auto& faces = mesh.faces();
    std::vector<double> a3(faces.size());
    std::vector<double> a2(faces.size());
    double total3 = 0;
    double total2 = 0;
    std::vector<std::uint32_t> degenerate;
    for (std::uint32_t f = 0; f < faces.size(); f++) {
        a3[f] = face_area_3d(mesh, f);
        a2[f] = std::abs(signed_area(uv.uv[faces[f][0]], uv.uv[faces[f][1]], uv.uv[faces[f][2]]));
        if (!(a2[f] > 0)) {
            degenerate.push_back(f);
        }
        total3 += a3[f];
        total2 += a2[f];
    }
    if (!degenerate.empty()) {
        throw DegenerateParameterization("zero-area 2D face(s)", degenerate);
    }
    std::vector<double> e(faces.size());
    double sum = 0;
    for (std::size_t f = 0; f < faces.size(); f++) {
        const double frac3 = a3[f] / total3;
        const double frac2 = a2[f] / total2;
        e[f] = frac3 > frac2 ? 1.0 - frac2 / frac3 : 1.0 - frac3 / frac2;
        sum += e[f];
    }
    return {std::move(e), sum / static_cast<double>(faces.size())};
}

MetricsReport compute_metrics(const TriMesh3& mesh, const UVMap& uv,
                              const std::vector<double>& phi,
                              const std::vector<double>& weight,
                              kernels::Backend backend)
{
    MetricsReport report;
    auto uvn = normalize_scale(uv, mesh, &report.scale_factor);

    auto stretch = checked_face_stretch(mesh, uvn, backend);
    report.face_l2.resize(stretch.size());
    report.face_linf.resize(stretch.size());
    for (std::size_t f = 0; f < stretch.size(); f++) {
        report.face_l2[f] = std::sqrt(
            0.5 * (stretch[f].sigma_max * stretch[f].sigma_max +
                   stretch[f].sigma_min * stretch[f].sigma_min));
        report.face_linf[f] = stretch[f].sigma_max;
    }
    report.l2_mesh = l2_from(stretch);
    report.linf_mesh = linf_from(stretch);

    std::vector<double> alpha2d(mesh.face_count() * 3);
    kernels::corner_angles_2d(uvn.uv, mesh.faces(), alpha2d, backend);
    auto [f_alpha, f_mesh] = angular_error(phi, alpha2d, weight);
    report.f_alpha = f_alpha;
    report.f_mesh = f_mesh;
    report.corner_angle_error.resize(phi.size());
    for (std::size_t c = 0; c < phi.size(); c++) {
        const double d = alpha2d[c] - phi[c];
        report.corner_angle_error[c] = weight[c] * d * d;
    }

    auto [per_face_e, e_mesh] = area_error(mesh, uvn);
    report.face_area_error = std::move(per_face_e);
    report.e_mesh = e_mesh;

    report.flipped_face_ids = detect_folds(mesh, uvn);
    return report;
}

}  // namespace unfurl
