#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include <array>
#include <cmath>
#include <random>

#include "qwave/filter_bank.hpp"
#include "qwave/image.hpp"
#include "qwave/transform.hpp"

namespace qwave::testing {

inline QImage random_image(std::size_t side, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    QImage x(side, side);
    for (Quaternion& q : x)
        q = {u(rng), u(rng), u(rng), u(rng)};
    return x;
}

inline ChannelImage random_channels(std::size_t side, bool nir, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ChannelImage img = make_channel_image(side, side, nir);
    for (Plane* p : img.planes())
        for (double& v : *p)
            v = u(rng);
    return img;
}

// Sampled isotropic Gaussian bump centred in the frame, identical in every channel up to a scale.
inline QImage gaussian_blob(std::size_t side, double width)
{
    QImage x(side, side);
    const double c = (static_cast<double>(side) - 1.0) / 2.0;
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j) {
            const double di = static_cast<double>(i) - c, dj = static_cast<double>(j) - c;
            const double g = std::exp(-(di * di + dj * dj) / (2.0 * width * width));
            x(i, j) = {0.0, 0.9 * g, 0.6 * g, 0.3 * g};
        }
    return x;
}

// Smooth ramps split by a diagonal edge and a disc; RGB only.
inline ChannelImage piecewise_smooth(std::size_t side)
{
    ChannelImage img = make_channel_image(side, side, false);
    const double s = static_cast<double>(side);
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j) {
            const double y = static_cast<double>(i) / s, x = static_cast<double>(j) / s;
            const bool upper = x + y < 1.0;
            const bool disc = (x - 0.65) * (x - 0.65) + (y - 0.35) * (y - 0.35) < 0.04;
            double r = upper ? 0.2 + 0.3 * x : 0.7 - 0.2 * y;
            double g = upper ? 0.5 + 0.2 * std::sin(3.0 * y) : 0.3 + 0.1 * x;
            double b = upper ? 0.8 - 0.4 * y : 0.4 + 0.3 * x * y;
            if (disc) {
                r = 0.9;
                g = 0.85 - 0.2 * x;
                b = 0.1;
            }
            img.r(i, j) = r;
            img.g(i, j) = g;
            img.b(i, j) = b;
        }
    return img;
}

// --- oracle ---------------------------------------------------------------
// Left multiplication written out as a real 4x4 matrix from the defining
// relations, so the oracle does not share the library's product code.
using Vec4 = std::array<double, 4>;

inline Vec4 left_mul(const Quaternion& p, const Quaternion& q)
{
    const double m[4][4] = {
        {p.a, -p.b, -p.c, -p.d},
        {p.b, p.a, -p.d, p.c},
        {p.c, p.d, p.a, -p.b},
        {p.d, -p.c, p.b, p.a},
    };
    const double v[4] = {q.a, q.b, q.c, q.d};
    Vec4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out[r] += m[r][c] * v[c];
    return out;
}

inline std::size_t wrap(long long i, std::size_t s)
{
    const long long n = static_cast<long long>(s);
    return static_cast<std::size_t>(((i % n) + n) % n);
}

// Full-rate circular convolution with the reversed taps, then keep every
// second sample.
inline std::array<QImage, 4> oracle_analysis(const QImage& x, const FilterBank& bank)
{
    const std::size_t s = x.rows();
    const long long kr = static_cast<long long>(bank.taps_rows());
    const long long kc = static_cast<long long>(bank.taps_cols());
    std::array<QImage, 4> out;
    for (int f = 0; f < 4; ++f) {
        QImage full(s, s);
        for (std::size_t p = 0; p < s; ++p)
            for (std::size_t q = 0; q < s; ++q) {
                Vec4 acc{};
                // h(k) = A(-k): sum over k of h(k) x(p - k)
                for (long long k = -(kr - 1); k <= 0; ++k)
                    for (long long l = -(kc - 1); l <= 0; ++l) {
                        const Quaternion& h = bank.analysis[f](static_cast<std::size_t>(-k), static_cast<std::size_t>(-l));
                        const Vec4 t = left_mul(h, x(wrap(static_cast<long long>(p) - k, s),
                                                     wrap(static_cast<long long>(q) - l, s)));
                        for (int c = 0; c < 4; ++c)
                            acc[c] += t[c];
                    }
                full(p, q) = {acc[0], acc[1], acc[2], acc[3]};
            }
        out[f] = QImage(s / 2, s / 2);
        for (std::size_t m = 0; m < s / 2; ++m)
            for (std::size_t n = 0; n < s / 2; ++n)
                out[f](m, n) = full(2 * m, 2 * n);
    }
    return out;
}

// Zero-insertion upsampling followed by circular convolution with the
// synthesis taps, summed over the four channels.
inline QImage oracle_synthesis(const std::array<QImage, 4>& sub, const FilterBank& bank)
{
    const std::size_t s = 2 * sub[0].rows();
    QImage x(s, s);
    for (int f = 0; f < 4; ++f) {
        QImage up(s, s);
        for (std::size_t m = 0; m < s / 2; ++m)
            for (std::size_t n = 0; n < s / 2; ++n)
                up(2 * m, 2 * n) = sub[f](m, n);
        for (std::size_t p = 0; p < s; ++p)
            for (std::size_t q = 0; q < s; ++q)
                for (std::size_t k = 0; k < bank.taps_rows(); ++k)
                    for (std::size_t l = 0; l < bank.taps_cols(); ++l) {
                        const Vec4 t = left_mul(bank.synthesis[f](k, l),
                                                up(wrap(static_cast<long long>(p) - static_cast<long long>(k), s),
                                                   wrap(static_cast<long long>(q) - static_cast<long long>(l), s)));
                        x(p, q) += Quaternion{t[0], t[1], t[2], t[3]};
                    }
    }
    return x;
}

} // namespace qwave::testing
