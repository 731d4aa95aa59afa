#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qwave/grid.hpp"

namespace qwave {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A colour image as separate real planes normalised to [0, 1].
/// Either {R, G, B} or {NIR, R, G, B}; all planes share one shape.
struct ChannelImage {
    Plane r, g, b;
    std::optional<Plane> nir;

    std::size_t width() const { return r.cols(); }
    std::size_t height() const { return r.rows(); }
    bool has_nir() const { return nir.has_value(); }
    std::size_t channel_count() const { return has_nir() ? 4 : 3; }

    // Planes in NIR, R, G, B order (NIR skipped when absent).
    std::vector<const Plane*> planes() const;
    std::vector<Plane*> planes();

    // Throws DimensionError on empty or mismatched planes.
    void validate() const;
};

ChannelImage make_channel_image(std::size_t width, std::size_t height, bool with_nir, double fill = 0.0);

/// Quaternion representation of a colour image: NIR + R e1 + G e2 + B e12.
using QImage = QuaternionGrid;

QImage embed(const ChannelImage& img);

/// Inverse of embed. Clamps to [0, 1] unless `clamp` is false; the
/// unclamped form is only for float-domain diagnostics.
ChannelImage extract(const QImage& q, bool want_nir, bool clamp = true);

// Reference and test must carry the same channel set and shape.
void require_compatible(const ChannelImage& ref, const ChannelImage& test);

} // namespace qwave
