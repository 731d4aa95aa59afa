#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "qwave/filter_bank.hpp"
#include "qwave/image.hpp"

namespace qwave {

using DetailTriple = std::array<QuaternionGrid, 3>;

struct Subbands {
    QuaternionGrid approx;
    DetailTriple details;
};

/// Multi-level decomposition of a square dyadic image.
///
/// details[0] holds level 1 (finest, side s/2); details[L-1] holds level L,
/// which shares its side s/2^L with `approx`.
struct WaveletPyramid {
    int levels = 0;
    std::size_t side = 0;
    std::string bank_name;
    int phase = 0;
    QuaternionGrid approx;
    std::vector<DetailTriple> details;

    std::size_t coefficient_count() const;
    std::size_t level_side(int level) const { return side >> level; }

    // Throws DimensionError if any grid has the wrong shape.
    void check_shapes() const;

    // Same shapes, all coefficients zero.
    WaveletPyramid zeros_like() const;
};

/// Position of one coefficient. Subband 0 is the approximation (only at the
/// deepest level), 1..3 the detail grids D1..D3.
struct CoefficientLocation {
    int level = 0;
    int subband = 0;
    std::size_t row = 0;
    std::size_t col = 0;

    auto operator<=>(const CoefficientLocation&) const = default;
};

/// Visits every coefficient in canonical order: level 1..L ascending; within a
/// level the approximation (level L only) then D1, D2, D3; row-major inside a
/// grid. This order is the tie-break for ranking and the layout of pyramid files.
template <typename Pyramid, typename Fn>
void for_each_coefficient(Pyramid& pyr, Fn&& fn)
{
    for (int level = 1; level <= pyr.levels; ++level) {
        auto visit = [&](auto& grid, int subband) {
            for (std::size_t r = 0; r < grid.rows(); ++r)
                for (std::size_t c = 0; c < grid.cols(); ++c)
                    fn(CoefficientLocation{level, subband, r, c}, grid(r, c));
        };
        if (level == pyr.levels)
            visit(pyr.approx, 0);
        for (int d = 0; d < 3; ++d)
            visit(pyr.details[level - 1][d], d + 1);
    }
}

// Largest admissible decomposition depth for a side-s image and this bank.
int max_levels(std::size_t side, const FilterBank& bank);

Subbands analyze_level(const QuaternionGrid& x, const FilterBank& bank, int phase = 0);

QuaternionGrid synthesize_level(const QuaternionGrid& approx, const DetailTriple& details,
                                const FilterBank& bank, int phase = 0);

WaveletPyramid decompose(const QImage& img, const FilterBank& bank, int levels, int phase = 0);

QImage reconstruct(const WaveletPyramid& pyr, const FilterBank& bank);

// Pyramid files: see README for the byte layout.
struct PyramidFileInfo {
    bool has_nir = true;
};

void save_pyramid(const WaveletPyramid& pyr, const std::filesystem::path& path, PyramidFileInfo info = {});
WaveletPyramid load_pyramid(const std::filesystem::path& path, std::uint64_t* bank_name_hash = nullptr,
                            PyramidFileInfo* info = nullptr);

} // namespace qwave
