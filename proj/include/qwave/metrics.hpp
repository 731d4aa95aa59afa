#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qwave/image.hpp"
#include "qwave/transform.hpp"

namespace qwave {

double energy(const QImage& x);
double energy(const WaveletPyramid& pyr);

enum class ProfileSource { image, pyramid };

/// Cumulative energy profile: squared moduli sorted in decreasing order,
/// running sum, divided by the total energy. Nondecreasing, ends at 1.
struct EnergyProfile {
    std::vector<double> values;
    ProfileSource source = ProfileSource::image;

    // Fewest coefficients whose share of the energy reaches `fraction`.
    std::size_t count_to_reach(double fraction) const;
};

// Throws std::domain_error for zero total energy.
EnergyProfile cumulative_profile(const QImage& x);
EnergyProfile cumulative_profile(const WaveletPyramid& pyr);

/// PSNR in dB with peak 1.0 and one MSE pooled over all channels.
/// Identical inputs give +infinity.
double psnr(const ChannelImage& ref, const ChannelImage& test);
double mse(const ChannelImage& ref, const ChannelImage& test);

/// Mean single-scale SSIM (11x11 Gaussian window, sigma 1.5, K1 0.01,
/// K2 0.03, dynamic range 1), computed per channel over fully covered
/// windows and averaged across channels.
double ssim(const ChannelImage& ref, const ChannelImage& test);
double ssim_plane(const Plane& ref, const Plane& test);

struct PolarSample {
    double height = 0.0;
    double r = 0.0, g = 0.0, b = 0.0;
};

/// Per pixel: height = modulus; (r, g, b) = e1/e2/e12 parts of axis*angle,
/// rescaled by one affine map sending the image-wide min/max over all three
/// components to [0, 1]. A flat colour range maps to 0.
Grid<PolarSample> polar_export(const QImage& img);

// Text exports. Columns are documented in the header comment of each file.
std::string format_profiles_csv(const EnergyProfile& image, const EnergyProfile& pyramid);
std::string format_polar_csv(const Grid<PolarSample>& samples);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace qwave
