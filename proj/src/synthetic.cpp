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
#include "unfurl/synthetic.hpp"

#include <cmath>
#include <functional>

namespace unfurl
{

namespace
{

double fract(double x) { return x - std::floor(x); }

/** Ruled-paper pattern: dark dashed lines on a light page */
double stripe_intensity(double u, double v)
{
    const double lines = 12.0;
    const double line = std::floor(v * lines);
    const double fv = v * lines - line;
    const bool in_line = fv > 0.3 && fv < 0.7;
    const bool dash = fract(u * 6.0 + 0.371 * line) < 0.78;
    return in_line && dash ? 0.15 : 0.9;
}

TriMesh3 from_grid(int n, const std::function<Vec3(double, double)>& surface)
{
    std::vector<Vec3> verts;
    std::vector<double> intensity;
    verts.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            const double u = static_cast<double>(j) / (n - 1);
            const double v = static_cast<double>(i) / (n - 1);
            verts.push_back(surface(u, v));
            intensity.push_back(stripe_intensity(u, v));
        }
    }
    std::vector<Face> faces;
    faces.reserve(2 * static_cast<std::size_t>(n - 1) * (n - 1));
    for (int i = 0; i + 1 < n; i++) {
        for (int j = 0; j + 1 < n; j++) {
            const auto a = static_cast<std::uint32_t>(i * n + j);
            const auto b = a + 1;
            const auto c = a + n;
            const auto d = a + n + 1;
            faces.push_back({a, b, d});
            faces.push_back({a, d, c});
        }
    }
    return TriMesh3(std::move(verts), std::move(faces), std::move(intensity));
}

}  // namespace

SyntheticKind synthetic_kind_from_string(const std::string& name)
{
    if (name == "plane") return SyntheticKind::Plane;
    if (name == "cylinder_sector") return SyntheticKind::CylinderSector;
    if (name == "hemisphere_cap") return SyntheticKind::HemisphereCap;
    if (name == "ripple") return SyntheticKind::Ripple;
    throw ConfigError("unknown synthetic kind: " + name);
}

std::string to_string(SyntheticKind kind)
{
    switch (kind) {
        case SyntheticKind::Plane: return "plane";
        case SyntheticKind::CylinderSector: return "cylinder_sector";
        case SyntheticKind::HemisphereCap: return "hemisphere_cap";
        case SyntheticKind::Ripple: return "ripple";
    }
    return "?";
}

TriMesh3 generate_synthetic(SyntheticKind kind, int n)
{
    if (n < 2) {
        throw ConfigError("synthetic meshes need n >= 2");
    }
    const double span = n - 1;
    switch (kind) {
        case SyntheticKind::Plane:
            return from_grid(n, [&](double u, double v) {
                return Vec3{u * span, v * span, 0.0};
            });
        case SyntheticKind::CylinderSector:
            // Quarter cylinder, radius 1, height 1; arc length = u * pi/2.
            return from_grid(n, [](double u, double v) {
                const double theta = u * kPi / 2.0;
                return Vec3{std::sin(theta), v, std::cos(theta)};
            });
        case SyntheticKind::HemisphereCap: {
            // Square patch of the unit sphere; corners at polar angle 60deg.
            const double m = std::sin(kPi / 3.0) / std::sqrt(2.0);
            return from_grid(n, [m](double u, double v) {
                const double x = (2.0 * u - 1.0) * m;
                const double y = (2.0 * v - 1.0) * m;
                return Vec3{x, y, std::sqrt(1.0 - x * x - y * y)};
            });
        }
        case SyntheticKind::Ripple:
            // Two full periods per axis at amplitude 2: steep enough that
            // flattening genuinely fights the relief (MM typically folds).
            return from_grid(n, [&](double u, double v) {
                const double z =
                    2.0 * std::sin(4.0 * kPi * u) * std::cos(4.0 * kPi * v);
                return Vec3{u * span, v * span, z};
            });
    }
    throw ConfigError("unknown synthetic kind");
}

}  // namespace unfurl
