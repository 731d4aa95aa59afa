#pragma once

// Real quaternions a + b e1 + c e2 + d e12 with
//   e1^2 = e2^2 = e12^2 = e1 e2 e12 = -1,
// so e1 e2 = e12, e2 e12 = e1, e12 e1 = e2. Multiplication is not commutative.

#include <cmath>
#include <ostream>

namespace qwave {

struct Quaternion {
    double a = 0.0; // scalar
    double b = 0.0; // e1
    double c = 0.0; // e2
    double d = 0.0; // e12

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_, double b_ = 0.0, double c_ = 0.0, double d_ = 0.0)
        : a{a_}, b{b_}, c{c_}, d{d_} {}

    static constexpr Quaternion e1() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion e2() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion e12() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator-() const { return {-a, -b, -c, -d}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        a += o.a; b += o.b; c += o.c; d += o.d;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        a -= o.a; b -= o.b; c -= o.c; d -= o.d;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        a *= s; b *= s; c *= s; d *= s;
        return *this;
    }

    constexpr bool is_pure() const { return a == 0.0; }
    constexpr bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0; }
};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator/(const Quaternion& q, double s) { return {q.a / s, q.b / s, q.c / s, q.d / s}; }

// Hamilton product; p multiplies from the left.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
    return {
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    };
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }

constexpr Quaternion conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

constexpr double norm_squared(const Quaternion& q) { return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d; }

inline double modulus(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

// Largest absolute component difference.
inline double max_abs_diff(const Quaternion& p, const Quaternion& q) {
    return std::fmax(std::fmax(std::fabs(p.a - q.a), std::fabs(p.b - q.b)),
                     std::fmax(std::fabs(p.c - q.c), std::fabs(p.d - q.d)));
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.a << " + " << q.b << "e1 + " << q.c << "e2 + " << q.d << "e12)";
}

/// Polar decomposition q = modulus * exp(axis * angle), axis a pure unit quaternion.
///
/// Zero maps to modulus 0, angle 0, zero axis. A nonzero real q has no defined
/// axis: the axis is left at zero, angle is 0 (q > 0) or pi (q < 0), and
/// `real_axis` is set.
struct PolarForm {
    double modulus = 0.0;
    double axis_e1 = 0.0;
    double axis_e2 = 0.0;
    double axis_e12 = 0.0;
    double angle = 0.0;
    bool real_axis = false;

    // Components of the pure quaternion axis * angle, i.e. the (R, G, B)
    // triple used for colour visualisation.
    double rotation_e1() const { return axis_e1 * angle; }
    double rotation_e2() const { return axis_e2 * angle; }
    double rotation_e12() const { return axis_e12 * angle; }
};

PolarForm polar(const Quaternion& q);

// exp(u * theta) = cos(theta) + u sin(theta) for a pure unit quaternion u.
Quaternion exp_pure(double u_e1, double u_e2, double u_e12, double theta);

// modulus * exp(axis * angle).
Quaternion from_polar(const PolarForm& p);

} // namespace qwave
