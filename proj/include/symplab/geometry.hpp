#pragma once

#include <cmath>

namespace symplab {

constexpr double PI = 3.14159265358979323846;
constexpr double TWO_PI = 2.0 * PI;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Unit tangent e_t = (-sin t, cos t); the matching outward normal is (cos t, sin t).
inline Vec2 tangent_dir(double t) { return {-std::sin(t), std::cos(t)}; }
inline Vec2 normal_dir(double t) { return {std::cos(t), std::sin(t)}; }

// reduce an angle to [0, 2*pi)
inline double wrap_angle(double t) {
    double w = std::fmod(t, TWO_PI);
    return w < 0.0 ? w + TWO_PI : w;
}

// Linear map of the plane, row-major.
struct AffineMap {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    Vec2 apply(Vec2 v) const { return {m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y}; }
    Vec2 apply_transpose(Vec2 v) const { return {m11 * v.x + m21 * v.y, m12 * v.x + m22 * v.y}; }
    double det() const { return m11 * m22 - m12 * m21; }

    // this ∘ inner
    AffineMap compose(const AffineMap& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }

    static AffineMap identity() { return {}; }
    static AffineMap rotation(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, -s, s, c};
    }
    static AffineMap scaling(double sx, double sy) { return {sx, 0.0, 0.0, sy}; }
    // Area-preserving normalizer: scale by (a, 1/a) after rotating by -sigma,
    // so sigma records the tilt of the input that the map straightens out.
    static AffineMap normalizer(double a, double sigma) {
        return scaling(a, 1.0 / a).compose(rotation(-sigma));
    }
};

}  // namespace symplab
