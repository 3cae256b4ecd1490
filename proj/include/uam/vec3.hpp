// vec3.hpp - fixed-dimension vector math, diagonal gains, and the smooth
// switch / fractional-power direction maps used by the controller stack.
#pragma once

#include <cmath>
#include <stdexcept>

namespace uam {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) { a.x += b.x; a.y += b.y; a.z += b.z; return a; }
inline Vec3& operator-=(Vec3& a, const Vec3& b) { a.x -= b.x; a.y -= b.y; a.z -= b.z; return a; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 cwise(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
inline bool finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// componentwise sign with sgn(0) = 0
inline double sgn(double v) { return (v > 0.0) - (v < 0.0); }
inline Vec3 sgn(const Vec3& a) { return {sgn(a.x), sgn(a.y), sgn(a.z)}; }

// Positive-definite diagonal gain matrix. Induced 2-norm is the max entry.
struct DiagGain3 {
    double d1 = 1.0;
    double d2 = 1.0;
    double d3 = 1.0;

    bool valid() const { return d1 > 0.0 && d2 > 0.0 && d3 > 0.0; }
    double max_entry() const { return std::max(d1, std::max(d2, d3)); }
};

inline Vec3 operator*(const DiagGain3& g, const Vec3& a) { return {g.d1 * a.x, g.d2 * a.y, g.d3 * a.z}; }

// Exponent and origin-smoothing threshold shared by all switch-map terms.
struct SwitchParams {
    double p_exp = 0.75;
    double switch_eps = 1e-4;

    bool valid() const { return p_exp > 0.5 && p_exp < 1.0 && switch_eps > 0.0; }
};

// Fractional-power direction map s / (s's)^(1-p), extended continuously to 0
// at the origin (magnitude |s|^(2p-1) -> 0 since 2p-1 > 0).
inline Vec3 frac_power(const Vec3& s, double p_exp) {
    if (!finite(s)) throw std::invalid_argument("frac_power: non-finite input");
    const double n2 = norm2(s);
    if (n2 == 0.0) return {};
    return s / std::pow(n2, 1.0 - p_exp);
}

// Smooth switch map: the fractional-power direction field blended to zero
// through sin^2 inside |s|^2 <= eps, so it stays differentiable at the origin.
// Satisfies |theta(s)| <= |s| + 1 and s'theta(s) >= 0.
inline Vec3 theta(const Vec3& s, const SwitchParams& sp) {
    if (!finite(s)) throw std::invalid_argument("theta: non-finite input");
    const double n2 = norm2(s);
    if (n2 == 0.0) return {};
    const Vec3 base = s / std::pow(n2, 1.0 - sp.p_exp);
    if (n2 > sp.switch_eps) return base;
    const double sw = std::sin(n2 * M_PI / (2.0 * sp.switch_eps));
    return (sw * sw) * base;
}

}  // namespace uam
