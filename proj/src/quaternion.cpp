#include "qwave/quaternion.hpp"

#include <cmath>
#include <numbers>

namespace qwave {

PolarForm polar(const Quaternion& q)
{
    PolarForm p;
    p.modulus = modulus(q);
    if (p.modulus == 0.0)
        return p;

    const double imag = std::sqrt(q.b * q.b + q.c * q.c + q.d * q.d);
    if (imag == 0.0) {
        p.real_axis = true;
        p.angle = q.a > 0.0 ? 0.0 : std::numbers::pi;
        return p;
    }
    // atan2 rather than acos(a/|q|): same value, no loss near 0 and pi.
    p.angle = std::atan2(imag, q.a);
    p.axis_e1 = q.b / imag;
    p.axis_e2 = q.c / imag;
    p.axis_e12 = q.d / imag;
    return p;
}

Quaternion exp_pure(double u_e1, double u_e2, double u_e12, double theta)
{
    const double s = std::sin(theta);
    return {std::cos(theta), u_e1 * s, u_e2 * s, u_e12 * s};
}

Quaternion from_polar(const PolarForm& p)
{
    return p.modulus * exp_pure(p.axis_e1, p.axis_e2, p.axis_e12, p.angle);
}

} // namespace qwave
