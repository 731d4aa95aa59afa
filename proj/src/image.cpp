#include "qwave/image.hpp"

#include <algorithm>

namespace qwave {

std::vector<const Plane*> ChannelImage::planes() const
{
    std::vector<const Plane*> out;
    if (nir)
        out.push_back(&*nir);
    out.insert(out.end(), {&r, &g, &b});
    return out;
}

std::vector<Plane*> ChannelImage::planes()
{
    std::vector<Plane*> out;
    if (nir)
        out.push_back(&*nir);
    out.insert(out.end(), {&r, &g, &b});
    return out;
}

void ChannelImage::validate() const
{
    if (r.empty())
        throw DimensionError("image has no pixels");
    for (const Plane* p : planes())
        if (!p->same_shape(r))
            throw DimensionError("channel planes differ in size: " + std::to_string(p->cols()) + "x" +
                                 std::to_string(p->rows()) + " vs " + std::to_string(r.cols()) + "x" +
                                 std::to_string(r.rows()));
}

ChannelImage make_channel_image(std::size_t width, std::size_t height, bool with_nir, double fill)
{
    ChannelImage img;
    img.r = Plane(height, width, fill);
    img.g = img.r;
    img.b = img.r;
    if (with_nir)
        img.nir = img.r;
    return img;
}

QImage embed(const ChannelImage& img)
{
    img.validate();
    QImage q(img.height(), img.width());
    for (std::size_t y = 0; y < q.rows(); ++y)
        for (std::size_t x = 0; x < q.cols(); ++x)
            q(y, x) = {img.nir ? (*img.nir)(y, x) : 0.0, img.r(y, x), img.g(y, x), img.b(y, x)};
    return q;
}

ChannelImage extract(const QImage& q, bool want_nir, bool clamp)
{
    auto fix = [clamp](double v) { return clamp ? std::clamp(v, 0.0, 1.0) : v; };
    ChannelImage img = make_channel_image(q.cols(), q.rows(), want_nir);
    for (std::size_t y = 0; y < q.rows(); ++y) {
        for (std::size_t x = 0; x < q.cols(); ++x) {
            const Quaternion& p = q(y, x);
            if (want_nir)
                (*img.nir)(y, x) = fix(p.a);
            img.r(y, x) = fix(p.b);
            img.g(y, x) = fix(p.c);
            img.b(y, x) = fix(p.d);
        }
    }
    return img;
}

void require_compatible(const ChannelImage& ref, const ChannelImage& test)
{
    ref.validate();
    test.validate();
    if (!ref.r.same_shape(test.r))
        throw DimensionError("images differ in size");
    if (ref.has_nir() != test.has_nir())
        throw DimensionError("images differ in channel set");
}

} // namespace qwave
