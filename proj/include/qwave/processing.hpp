#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "qwave/transform.hpp"

namespace qwave {

// S_t(x) = x/|x| * max(|x| - t, 0), and 0 at x = 0.
Quaternion soft_threshold(const Quaternion& x, double t);

// x if |x| > t, else 0.
Quaternion hard_threshold(const Quaternion& x, double t);

enum class ThresholdMode { soft, hard };

ThresholdMode parse_threshold_mode(const std::string& s);

struct ThresholdReport {
    std::size_t kept_count = 0;
    std::size_t total_count = 0;
    double threshold_value = 0.0; // modulus of the smallest kept coefficient
    std::vector<CoefficientLocation> kept_locations; // canonical order
};

struct CompressResult {
    WaveletPyramid pyramid;
    ThresholdReport report;
};

// Number of coefficients compress() keeps: floor(keep_fraction * total).
std::size_t kept_count_for(double keep_fraction, std::size_t total);

/// Keeps the floor(keep_fraction * N) largest-modulus coefficients of the whole
/// pyramid (approximation included) and zeroes the rest. Equal moduli are
/// ranked by canonical coefficient order.
CompressResult compress(const WaveletPyramid& pyr, double keep_fraction);

// Scales every detail coefficient by the real gain; approximation untouched.
WaveletPyramid enhance(const WaveletPyramid& pyr, double gain);

// Zeroes the approximation; details untouched.
WaveletPyramid edges(const WaveletPyramid& pyr);

// Zeroes all detail coefficients.
WaveletPyramid approximation_only(const WaveletPyramid& pyr);

// Universal (VisuShrink) threshold sigma * sqrt(2 ln n).
double visu_threshold(double sigma, std::size_t n);

// Applies the threshold operator to every detail coefficient.
WaveletPyramid denoise(const WaveletPyramid& pyr, double t, ThresholdMode mode);

/// Location bookkeeping: one quaternionic run against four scalar channel runs.
struct LocationComparison {
    std::size_t quaternion_count = 0;
    std::array<std::size_t, 4> channel_counts{};
    std::size_t union_count = 0;
    std::size_t channel_total = 0; // sum of channel counts
    double union_ratio = 0.0; // union_count / quaternion_count
};

LocationComparison location_overhead(const ThresholdReport& quaternion_report,
                                     const std::array<ThresholdReport, 4>& channel_reports);

/// Compresses each of the four quaternion components as its own scalar image
/// with a real bank. Reports are in NIR, R, G, B order.
std::array<ThresholdReport, 4> compress_channelwise(const QImage& img, const FilterBank& real_bank, int levels,
                                                    double keep_fraction);

// Header lines K/total/threshold followed by `level subband row col` lines.
std::string format_report(const ThresholdReport& report);
void save_report(const ThresholdReport& report, const std::filesystem::path& path);
ThresholdReport parse_report(const std::string& text);

} // namespace qwave
