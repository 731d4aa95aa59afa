#pragma once

#include <cstdint>
#include <filesystem>
#include <random>

#include "qwave/image.hpp"

namespace qwave {

/// A decoded file: planes normalised by 255 or 65535 and the sample depth.
struct RasterRGB {
    Plane r, g, b;
    int bit_depth = 8;
};

struct RasterGray {
    Plane v;
    int bit_depth = 8;
};

// PNG of any colour type; grey is replicated, alpha dropped, palettes expanded.
RasterRGB read_png_rgb(const std::filesystem::path& path);
// Single-plane PNG or binary PGM (P5). Colour PNGs are rejected.
RasterGray read_gray(const std::filesystem::path& path);

// Values are clamped to [0, 1] and rounded to the given depth (8 or 16).
void write_png_rgb(const std::filesystem::path& path, const Plane& r, const Plane& g, const Plane& b, int bit_depth);
void write_png_gray(const std::filesystem::path& path, const Plane& v, int bit_depth);
void write_pgm(const std::filesystem::path& path, const Plane& v, int bit_depth);

/// RGB file plus optional NIR plane file.
struct LoadedImage {
    ChannelImage image;
    int bit_depth = 8;
};

LoadedImage load_image(const std::filesystem::path& rgb, const std::filesystem::path& nir = {});

/// Writes RGB to `rgb_path` and, when present, NIR to `nir_path`
/// (PGM when its extension is .pgm, PNG otherwise).
void save_image(const ChannelImage& img, int bit_depth, const std::filesystem::path& rgb_path,
                const std::filesystem::path& nir_path);

// Separable Gaussian blur, kernel radius ceil(3 sigma), periodic boundary.
Plane gaussian_blur(const Plane& p, double sigma);
ChannelImage gaussian_blur(const ChannelImage& img, double sigma);

// Independent N(0, sigma^2) on every component of every pixel; no clamping.
QImage add_gaussian_noise(const QImage& img, double sigma, std::uint64_t seed, bool include_scalar = true);

} // namespace qwave
