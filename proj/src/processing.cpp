#include "qwave/processing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace qwave {

Quaternion soft_threshold(const Quaternion& x, double t)
{
    const double m = modulus(x);
    if (m == 0.0)
        return {};
    const double shrunk = std::max(m - t, 0.0);
    return x * (shrunk / m);
}

Quaternion hard_threshold(const Quaternion& x, double t)
{
    return modulus(x) > t ? x : Quaternion{};
}

ThresholdMode parse_threshold_mode(const std::string& s)
{
    if (s == "soft")
        return ThresholdMode::soft;
    if (s == "hard")
        return ThresholdMode::hard;
    throw std::invalid_argument("threshold mode must be 'soft' or 'hard', got '" + s + "'");
}

std::size_t kept_count_for(double keep_fraction, std::size_t total)
{
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw std::invalid_argument("keep fraction must lie in (0, 1]");
    const auto k = static_cast<std::size_t>(std::floor(keep_fraction * static_cast<double>(total)));
    return std::min(k, total);
}

CompressResult compress(const WaveletPyramid& pyr, double keep_fraction)
{
    pyr.check_shapes();
    const std::size_t total = pyr.coefficient_count();
    const std::size_t keep = kept_count_for(keep_fraction, total);

    std::vector<double> moduli;
    moduli.reserve(total);
    for_each_coefficient(pyr, [&](const CoefficientLocation&, const Quaternion& q) { moduli.push_back(modulus(q)); });

    // Indices are in canonical order, so the index breaks modulus ties.
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto before = [&](std::size_t i, std::size_t j) {
        return moduli[i] > moduli[j] || (moduli[i] == moduli[j] && i < j);
    };
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), before);

    std::vector<char> kept(total, 0);
    for (std::size_t i = 0; i < keep; ++i)
        kept[order[i]] = 1;

    CompressResult res;
    res.pyramid = pyr;
    res.report.kept_count = keep;
    res.report.total_count = total;
    res.report.kept_locations.reserve(keep);
    double smallest = keep == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    for_each_coefficient(res.pyramid, [&](const CoefficientLocation& loc, Quaternion& q) {
        if (kept[i]) {
            res.report.kept_locations.push_back(loc);
            smallest = std::min(smallest, moduli[i]);
        } else {
            q = {};
        }
        ++i;
    });
    res.report.threshold_value = smallest;
    return res;
}

WaveletPyramid enhance(const WaveletPyramid& pyr, double gain)
{
    if (!(gain > 0.0))
        throw std::invalid_argument("enhancement gain must be positive");
    WaveletPyramid out = pyr;
    for (auto& level : out.details)
        for (auto& g : level)
            for (Quaternion& q : g)
                q *= gain;
    return out;
}

WaveletPyramid edges(const WaveletPyramid& pyr)
{
    WaveletPyramid out = pyr;
    for (Quaternion& q : out.approx)
        q = {};
    return out;
}

WaveletPyramid approximation_only(const WaveletPyramid& pyr)
{
    WaveletPyramid out = pyr;
    for (auto& level : out.details)
        for (auto& g : level)
            for (Quaternion& q : g)
                q = {};
    return out;
}

double visu_threshold(double sigma, std::size_t n)
{
    if (!(sigma > 0.0))
        throw std::invalid_argument("noise sigma must be positive");
    if (n < 2)
        throw std::invalid_argument("VisuShrink needs at least two pixels");
    return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

WaveletPyramid denoise(const WaveletPyramid& pyr, double t, ThresholdMode mode)
{
    if (!(t >= 0.0))
        throw std::invalid_argument("threshold must be non-negative");
    WaveletPyramid out = pyr;
    for (auto& level : out.details)
        for (auto& g : level)
            for (Quaternion& q : g)
                q = mode == ThresholdMode::soft ? soft_threshold(q, t) : hard_threshold(q, t);
    return out;
}

LocationComparison location_overhead(const ThresholdReport& quaternion_report,
                                     const std::array<ThresholdReport, 4>& channel_reports)
{
    LocationComparison cmp;
    cmp.quaternion_count = quaternion_report.kept_count;
    std::set<CoefficientLocation> all;
    for (std::size_t c = 0; c < 4; ++c) {
        const auto& r = channel_reports[c];
        if (r.total_count != quaternion_report.total_count)
            throw std::invalid_argument("channel report " + std::to_string(c) + " covers " +
                                        std::to_string(r.total_count) + " coefficients, quaternionic report " +
                                        std::to_string(quaternion_report.total_count));
        cmp.channel_counts[c] = r.kept_count;
        cmp.channel_total += r.kept_count;
        all.insert(r.kept_locations.begin(), r.kept_locations.end());
    }
    cmp.union_count = all.size();
    if (cmp.quaternion_count > 0)
        cmp.union_ratio = static_cast<double>(cmp.union_count) / static_cast<double>(cmp.quaternion_count);
    else
        cmp.union_ratio = cmp.union_count == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return cmp;
}

std::array<ThresholdReport, 4> compress_channelwise(const QImage& img, const FilterBank& real_bank, int levels,
                                                    double keep_fraction)
{
    if (!real_bank.is_real())
        throw std::invalid_argument("channel-by-channel runs need a real filter bank, '" + real_bank.name +
                                    "' has quaternionic taps");
    std::array<ThresholdReport, 4> reports;
    for (int c = 0; c < 4; ++c) {
        QImage scalar(img.rows(), img.cols());
        for (std::size_t y = 0; y < img.rows(); ++y) {
            for (std::size_t x = 0; x < img.cols(); ++x) {
                const Quaternion& q = img(y, x);
                scalar(y, x) = Quaternion{c == 0 ? q.a : c == 1 ? q.b : c == 2 ? q.c : q.d};
            }
        }
        reports[c] = compress(decompose(scalar, real_bank, levels), keep_fraction).report;
    }
    return reports;
}

std::string format_report(const ThresholdReport& report)
{
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "# threshold report\nkept %zu\ntotal %zu\nthreshold %.17g\n# level subband row col\n",
                  report.kept_count, report.total_count, report.threshold_value);
    out += buf;
    for (const auto& l : report.kept_locations) {
        std::snprintf(buf, sizeof buf, "%d %d %zu %zu\n", l.level, l.subband, l.row, l.col);
        out += buf;
    }
    return out;
}

void save_report(const ThresholdReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write report '" + path.string() + "'");
    out << format_report(report);
}

ThresholdReport parse_report(const std::string& text)
{
    ThresholdReport r;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "kept")
            ls >> r.kept_count;
        else if (key == "total")
            ls >> r.total_count;
        else if (key == "threshold")
            ls >> r.threshold_value;
        else {
            CoefficientLocation loc;
            std::istringstream ks(line);
            if (!(ks >> loc.level >> loc.subband >> loc.row >> loc.col))
                throw std::runtime_error("malformed report line '" + line + "'");
            r.kept_locations.push_back(loc);
        }
    }
    if (r.kept_locations.size() != r.kept_count)
        throw std::runtime_error("report lists " + std::to_string(r.kept_locations.size()) + " locations but kept = " +
                                 std::to_string(r.kept_count));
    return r;
}

} // namespace qwave
