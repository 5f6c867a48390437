#pragma once

#include <cmath>

namespace ecad {

// Default tolerances. The DSL and kernel accept overrides; these are the
// library-wide fallbacks.
inline constexpr double kEpsJoin = 1e-6;       // loop endpoint join tolerance
inline constexpr double kEpsDegenerate = 1e-9; // zero-length / zero-radius cutoff

struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.u + b.u, a.v + b.v}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.u - b.u, a.v - b.v}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.u, s * a.v}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.u, s * a.v}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.u * b.u + a.v * b.v; }
inline double cross(Vec2 a, Vec2 b) { return a.u * b.v - a.v * b.u; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double dist(Vec3 a, Vec3 b) { return norm(a - b); }

inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    return n > 0.0 ? Vec3{a.x / n, a.y / n, a.z / n} : a;
}

inline bool finite(Vec2 a) { return std::isfinite(a.u) && std::isfinite(a.v); }
inline bool finite(Vec3 a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

} // namespace ecad
