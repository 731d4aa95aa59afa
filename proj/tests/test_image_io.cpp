#include <doctest.h>

#include <filesystem>

#include "qwave/image_io.hpp"
#include "support.hpp"

using namespace qwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "qwave_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

double max_plane_diff(const Plane& a, const Plane& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

} // namespace

TEST_CASE("8-bit RGB and PGM NIR round trip")
{
    const ChannelImage img = testing::random_channels(16, true, 1);
    const fs::path rgb = scratch("rt8.png"), nir = scratch("rt8_nir.pgm");
    save_image(img, 8, rgb, nir);
    const LoadedImage back = load_image(rgb, nir);
    CHECK(back.bit_depth == 8);
    REQUIRE(back.image.has_nir());
    CHECK(max_plane_diff(back.image.r, img.r) <= 0.5 / 255 + 1e-12);
    CHECK(max_plane_diff(*back.image.nir, *img.nir) <= 0.5 / 255 + 1e-12);
}

TEST_CASE("16-bit PNG round trip with PNG NIR")
{
    const ChannelImage img = testing::random_channels(8, true, 2);
    const fs::path rgb = scratch("rt16.png"), nir = scratch("rt16_nir.png");
    save_image(img, 16, rgb, nir);
    const LoadedImage back = load_image(rgb, nir);
    CHECK(back.bit_depth == 16);
    CHECK(max_plane_diff(back.image.b, img.b) <= 0.5 / 65535 + 1e-12);
    CHECK(max_plane_diff(*back.image.nir, *img.nir) <= 0.5 / 65535 + 1e-12);
}

TEST_CASE("grey PNG is replicated into RGB")
{
    Plane v(4, 4);
    v(1, 2) = 1.0;
    const fs::path p = scratch("grey.png");
    write_png_gray(p, v, 8);
    const RasterRGB rgb = read_png_rgb(p);
    CHECK(rgb.r(1, 2) == 1.0);
    CHECK(rgb.g(1, 2) == 1.0);
    CHECK(rgb.b(0, 0) == 0.0);
}

TEST_CASE("I/O failures")
{
    CHECK_THROWS(load_image(scratch("missing.png")));
    const fs::path rgb = scratch("small.png"), nir = scratch("other_nir.pgm");
    save_image(testing::random_channels(8, false, 3), 8, rgb, {});
    write_pgm(nir, Plane(4, 4), 8);
    CHECK_THROWS_AS(load_image(rgb, nir), DimensionError);
}

TEST_CASE("Gaussian blur preserves constants and the mean")
{
    Plane c(16, 16);
    for (double& v : c)
        v = 0.4;
    for (double v : gaussian_blur(c, 1.25))
        CHECK(v == doctest::Approx(0.4).epsilon(1e-12));

    Plane spike(16, 16);
    spike(3, 3) = 1.0;
    const Plane b = gaussian_blur(spike, 1.25);
    double sum = 0.0;
    for (double v : b)
        sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b(3, 3) < 1.0);
    CHECK(b(3, 4) == doctest::Approx(b(4, 3)));
    CHECK(b(2, 3) == doctest::Approx(b(4, 3)));
}

TEST_CASE("noise is seeded and optional on the scalar part")
{
    const QImage x(16, 16);
    const QImage a = add_gaussian_noise(x, 0.1, 7), b = add_gaussian_noise(x, 0.1, 7);
    CHECK(a == b);
    CHECK_FALSE(a == add_gaussian_noise(x, 0.1, 8));
    for (const Quaternion& q : add_gaussian_noise(x, 0.1, 7, false))
        CHECK(q.a == 0.0);
}
