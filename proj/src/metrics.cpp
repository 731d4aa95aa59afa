#include "qwave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>

namespace qwave {

double energy(const QImage& x)
{
    double e = 0.0;
    for (const Quaternion& q : x)
        e += norm_squared(q);
    return e;
}

double energy(const WaveletPyramid& pyr)
{
    double e = 0.0;
    for_each_coefficient(pyr, [&](const CoefficientLocation&, const Quaternion& q) { e += norm_squared(q); });
    return e;
}

std::size_t EnergyProfile::count_to_reach(double fraction) const
{
    auto it = std::lower_bound(values.begin(), values.end(), fraction);
    return it == values.end() ? values.size() : static_cast<std::size_t>(it - values.begin()) + 1;
}

namespace {

EnergyProfile profile_of(std::vector<double> squares, ProfileSource source)
{
    std::sort(squares.begin(), squares.end(), std::greater<>());
    double total = 0.0;
    for (double v : squares)
        total += v;
    if (!(total > 0.0))
        throw std::domain_error("cumulative energy profile is undefined for zero energy");

    EnergyProfile p;
    p.source = source;
    p.values.resize(squares.size());
    double run = 0.0;
    for (std::size_t i = 0; i < squares.size(); ++i) {
        run += squares[i];
        p.values[i] = std::min(run / total, 1.0);
    }
    p.values.back() = 1.0;
    return p;
}

} // namespace

EnergyProfile cumulative_profile(const QImage& x)
{
    std::vector<double> sq;
    sq.reserve(x.size());
    for (const Quaternion& q : x)
        sq.push_back(norm_squared(q));
    return profile_of(std::move(sq), ProfileSource::image);
}

EnergyProfile cumulative_profile(const WaveletPyramid& pyr)
{
    std::vector<double> sq;
    sq.reserve(pyr.coefficient_count());
    for_each_coefficient(pyr, [&](const CoefficientLocation&, const Quaternion& q) { sq.push_back(norm_squared(q)); });
    return profile_of(std::move(sq), ProfileSource::pyramid);
}

double mse(const ChannelImage& ref, const ChannelImage& test)
{
    require_compatible(ref, test);
    const auto rp = ref.planes();
    const auto tp = test.planes();
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t c = 0; c < rp.size(); ++c) {
        auto rv = rp[c]->values();
        auto tv = tp[c]->values();
        for (std::size_t i = 0; i < rv.size(); ++i) {
            const double d = rv[i] - tv[i];
            sum += d * d;
        }
        n += rv.size();
    }
    return sum / static_cast<double>(n);
}

double psnr(const ChannelImage& ref, const ChannelImage& test)
{
    const double m = mse(ref, test);
    if (m == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / m);
}

namespace {

constexpr int ssim_window = 11;
constexpr double ssim_sigma = 1.5;

std::vector<double> gaussian_1d()
{
    std::vector<double> w(ssim_window);
    const int r = ssim_window / 2;
    double sum = 0.0;
    for (int i = 0; i < ssim_window; ++i) {
        const double x = i - r;
        w[i] = std::exp(-x * x / (2.0 * ssim_sigma * ssim_sigma));
        sum += w[i];
    }
    for (double& v : w)
        v /= sum;
    return w;
}

// "Valid" separable filtering: output is (rows-10) x (cols-10).
Plane filter_valid(const Plane& in, const std::vector<double>& w)
{
    const std::size_t n = w.size();
    Plane tmp(in.rows(), in.cols() - n + 1);
    for (std::size_t y = 0; y < tmp.rows(); ++y)
        for (std::size_t x = 0; x < tmp.cols(); ++x) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += w[k] * in(y, x + k);
            tmp(y, x) = s;
        }
    Plane out(in.rows() - n + 1, tmp.cols());
    for (std::size_t y = 0; y < out.rows(); ++y)
        for (std::size_t x = 0; x < out.cols(); ++x) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += w[k] * tmp(y + k, x);
            out(y, x) = s;
        }
    return out;
}

Plane product(const Plane& a, const Plane& b)
{
    Plane out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.values()[i] = a.values()[i] * b.values()[i];
    return out;
}

} // namespace

double ssim_plane(const Plane& ref, const Plane& test)
{
    if (!ref.same_shape(test))
        throw DimensionError("SSIM inputs differ in size");
    if (ref.rows() < static_cast<std::size_t>(ssim_window) || ref.cols() < static_cast<std::size_t>(ssim_window))
        throw DimensionError("SSIM needs images of at least 11x11 pixels");

    const double c1 = (0.01 * 1.0) * (0.01 * 1.0);
    const double c2 = (0.03 * 1.0) * (0.03 * 1.0);
    const auto w = gaussian_1d();

    const Plane mu_x = filter_valid(ref, w);
    const Plane mu_y = filter_valid(test, w);
    const Plane xx = filter_valid(product(ref, ref), w);
    const Plane yy = filter_valid(product(test, test), w);
    const Plane xy = filter_valid(product(ref, test), w);

    double sum = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x.values()[i];
        const double my = mu_y.values()[i];
        const double vx = xx.values()[i] - mx * mx;
        const double vy = yy.values()[i] - my * my;
        const double cov = xy.values()[i] - mx * my;
        sum += ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
    return sum / static_cast<double>(mu_x.size());
}

double ssim(const ChannelImage& ref, const ChannelImage& test)
{
    require_compatible(ref, test);
    const auto rp = ref.planes();
    const auto tp = test.planes();
    double sum = 0.0;
    for (std::size_t c = 0; c < rp.size(); ++c)
        sum += ssim_plane(*rp[c], *tp[c]);
    return sum / static_cast<double>(rp.size());
}

Grid<PolarSample> polar_export(const QImage& img)
{
    Grid<PolarSample> out(img.rows(), img.cols());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < img.size(); ++i) {
        const PolarForm p = polar(img.values()[i]);
        PolarSample& s = out.values()[i];
        s.height = p.modulus;
        s.r = p.rotation_e1();
        s.g = p.rotation_e2();
        s.b = p.rotation_e12();
        lo = std::min({lo, s.r, s.g, s.b});
        hi = std::max({hi, s.r, s.g, s.b});
    }
    const double span = hi - lo;
    for (PolarSample& s : out) {
        if (span > 0.0) {
            s.r = (s.r - lo) / span;
            s.g = (s.g - lo) / span;
            s.b = (s.b - lo) / span;
        } else {
            s.r = s.g = s.b = 0.0;
        }
    }
    return out;
}

std::string format_profiles_csv(const EnergyProfile& image, const EnergyProfile& pyramid)
{
    // index = number of largest coefficients summed
    std::string out = "index,image,decomposition\n";
    const std::size_t n = std::max(image.values.size(), pyramid.values.size());
    char buf[96];
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i < image.values.size() ? image.values[i] : 1.0;
        const double b = i < pyramid.values.size() ? pyramid.values[i] : 1.0;
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i + 1, a, b);
        out += buf;
    }
    return out;
}

std::string format_polar_csv(const Grid<PolarSample>& samples)
{
    // r/g/b are the rescaled axis*angle components
    std::string out = "row,col,height,r,g,b\n";
    char buf[160];
    for (std::size_t y = 0; y < samples.rows(); ++y)
        for (std::size_t x = 0; x < samples.cols(); ++x) {
            const PolarSample& s = samples(y, x);
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", y, x, s.height, s.r, s.g, s.b);
            out += buf;
        }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

} // namespace qwave
