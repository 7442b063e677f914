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

#include <array>
#include <cmath>
#include <cstdint>

namespace unfurl
{

/** @brief 2D point/vector, double precision */
struct Vec2 {
    double x{0};
    double y{0};

    Vec2& operator+=(const Vec2& b)
    {
        x += b.x;
        y += b.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& b)
    {
        x -= b.x;
        y -= b.y;
        return *this;
    }
    Vec2& operator*=(double s)
    {
        x *= s;
        y *= s;
        return *this;
    }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/** @brief 3D point/vector, double precision */
struct Vec3 {
    double x{0};
    double y{0};
    double z{0};

    Vec3& operator+=(const Vec3& b)
    {
        x += b.x;
        y += b.y;
        z += b.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& b)
    {
        x -= b.x;
        y -= b.y;
        z -= b.z;
        return *this;
    }
    Vec3& operator*=(double s)
    {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

inline double dot(const Vec3& a, const Vec3& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

/** @brief 2D cross product (z of the 3D cross) */
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec2& v) { return std::sqrt(dot(v, v)); }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec2 normalized(const Vec2& v)
{
    auto n = norm(v);
    return {v.x / n, v.y / n};
}

inline Vec3 normalized(const Vec3& v)
{
    auto n = norm(v);
    return {v.x / n, v.y / n, v.z / n};
}

/** @brief Rotate a 2D vector counterclockwise by angle (radians) */
inline Vec2 rotated(const Vec2& v, double angle)
{
    auto c = std::cos(angle);
    auto s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/**
 * @brief Interior angle at the vertex shared by vectors a and b
 *
 * atan2 form; stable for near-degenerate corners where acos loses digits.
 */
inline double interior_angle(const Vec3& a, const Vec3& b)
{
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

inline double interior_angle(const Vec2& a, const Vec2& b)
{
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

/** @brief Signed area of a 2D triangle (positive = counterclockwise) */
inline double signed_area(const Vec2& a, const Vec2& b, const Vec2& c)
{
    return 0.5 * cross(b - a, c - a);
}

/** @brief Area of a 3D triangle (half cross-product magnitude) */
inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return 0.5 * norm(cross(b - a, c - a));
}

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

inline bool is_finite(const Vec3& v)
{
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

constexpr double kPi = 3.14159265358979323846;

/** @brief Vertex-index triple describing one triangle */
using Face = std::array<std::uint32_t, 3>;

}  // namespace unfurl
