#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwave/grid.hpp"

namespace qwave {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_{line} {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class Subband : int { H = 0, G1 = 1, G2 = 2, G3 = 3 };

inline constexpr std::array<const char*, 4> subband_names{"H", "G1", "G2", "G3"};

/// Analysis quadruple (H, G1, G2, G3) and matching synthesis quadruple of
/// quaternion tap grids, all of one shape.
///
/// Analysis correlates: y(m,n) = sum_{k,l} A(k,l) x(2m+k, 2n+l).
/// Synthesis sums upsampled subbands convolved with S: x(m,n) = sum S(k,l) c((m-k)/2, (n-l)/2).
/// Taps multiply from the left in both directions. For an orthonormal bank
/// S(k,l) = conj(A(k,l)), which is conj(h(-k)) for the convolution kernel h(k) = A(-k).
struct FilterBank {
    std::string name;
    std::array<QuaternionGrid, 4> analysis;
    std::array<QuaternionGrid, 4> synthesis;

    // Set by load_bank when the PR certificate fails; never fatal.
    std::optional<std::string> warning;

    std::size_t taps_rows() const { return analysis[0].rows(); }
    std::size_t taps_cols() const { return analysis[0].cols(); }
    std::size_t max_tap_dim() const { return std::max(taps_rows(), taps_cols()); }

    const QuaternionGrid& analysis_filter(Subband s) const { return analysis[static_cast<int>(s)]; }
    const QuaternionGrid& synthesis_filter(Subband s) const { return synthesis[static_cast<int>(s)]; }

    // All taps have zero imaginary parts.
    bool is_real() const;

    // Throws std::invalid_argument when the eight grids disagree in shape.
    void check_shapes() const;

    bool operator==(const FilterBank& o) const
    {
        return name == o.name && analysis == o.analysis && synthesis == o.synthesis;
    }
};

// Tap-wise conjugate in the same position. Applying it twice is the identity.
QuaternionGrid derive_synthesis(const QuaternionGrid& analysis_taps);

std::vector<std::string> builtin_names();

/// "haar": real orthonormal 2x2 bank. "qhaar": haar with the subband filters
/// left-multiplied by 1, e1, e2, e12 respectively.
FilterBank builtin(const std::string& name);

/// Same bank with every tap of one analysis filter left-multiplied by unit
/// quaternion u, synthesis re-derived.
FilterBank rotate_subband(const FilterBank& bank, Subband s, const Quaternion& u);

/// Parses a QWFB v1 file. Missing synthesis sections are derived from the
/// analysis taps. The result carries a warning when validate_pr fails.
FilterBank load_bank(const std::filesystem::path& path);
FilterBank parse_bank(const std::string& text, const std::string& name);

std::string format_bank(const FilterBank& bank, bool with_synthesis = true);
void save_bank(const FilterBank& bank, const std::filesystem::path& path, bool with_synthesis = true);

/// Operational perfect-reconstruction certificate: max over `trials` random
/// size x size quaternion images (parts uniform in [-1, 1]) of the max pixel
/// modulus error of one analysis/synthesis round trip.
double validate_pr(const FilterBank& bank, int trials, std::size_t size, std::uint64_t seed = 1);

inline constexpr double pr_tolerance = 1e-9;

// 64-bit FNV-1a of the bank name; stored in pyramid files.
std::uint64_t bank_hash(const std::string& name);

} // namespace qwave
