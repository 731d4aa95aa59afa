#include <doctest.h>

#include <filesystem>

#include "qwave/metrics.hpp"
#include "qwave/transform.hpp"
#include "support.hpp"

using namespace qwave;
using qwave::testing::random_image;

TEST_CASE("constant image has only an approximation")
{
    for (const char* name : {"haar", "qhaar"}) {
        QImage x(8, 8);
        for (Quaternion& q : x)
            q = Quaternion{0.3};
        const Subbands sb = analyze_level(x, builtin(name));
        for (const Quaternion& q : sb.approx)
            CHECK(max_abs_diff(q, Quaternion{0.6}) < 1e-15);
        for (const auto& d : sb.details)
            for (const Quaternion& q : d)
                CHECK(modulus(q) < 1e-15);
    }
}

TEST_CASE("impulse response on a 4x4 grid")
{
    QImage x(4, 4);
    x(0, 0) = Quaternion{1.0};
    const FilterBank haar = builtin("haar");
    const Subbands sb = analyze_level(x, haar);
    for (int f = 0; f < 4; ++f) {
        const QImage& g = f == 0 ? sb.approx : sb.details[f - 1];
        CHECK(g(0, 0) == haar.analysis[f](0, 0));
        CHECK(g(0, 1).is_zero());
        CHECK(g(1, 0).is_zero());
        CHECK(g(1, 1).is_zero());
    }
    WaveletPyramid p = decompose(x, haar, 1);
    CHECK(energy(p) == doctest::Approx(1.0));
}

TEST_CASE("analysis and synthesis agree with the convolution oracle")
{
    for (const char* name : {"haar", "qhaar"}) {
        const FilterBank bank = builtin(name);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const QImage x = random_image(8, seed);
            const Subbands sb = analyze_level(x, bank);
            const auto ref = testing::oracle_analysis(x, bank);
            CHECK(max_modulus_diff(sb.approx, ref[0]) < 1e-12);
            for (int f = 0; f < 3; ++f)
                CHECK(max_modulus_diff(sb.details[f], ref[f + 1]) < 1e-12);

            const auto sub = std::array<QImage, 4>{random_image(4, seed + 10), random_image(4, seed + 11),
                                                   random_image(4, seed + 12), random_image(4, seed + 13)};
            const QImage y = synthesize_level(sub[0], {sub[1], sub[2], sub[3]}, bank);
            CHECK(max_modulus_diff(y, testing::oracle_synthesis(sub, bank)) < 1e-12);
        }
    }
}

TEST_CASE("pyramid shapes and depth limits")
{
    const QImage x = random_image(512, 3);
    const FilterBank bank = builtin("qhaar");
    CHECK(max_levels(512, bank) == 9);
    const WaveletPyramid p = decompose(x, bank, 8);
    CHECK(p.approx.rows() == 2);
    CHECK(p.details.front()[0].rows() == 256);
    CHECK(p.details.back()[2].rows() == 2);
    CHECK(p.coefficient_count() == 512u * 512u);
    try {
        decompose(x, bank, 20);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("9") != std::string::npos);
    }
    CHECK_THROWS_AS(analyze_level(QImage(6, 6), bank), DimensionError);
    CHECK_THROWS_AS(analyze_level(QImage(8, 4), bank), DimensionError);
}

TEST_CASE("one level equals analyze_level")
{
    const QImage x = random_image(16, 7);
    const FilterBank bank = builtin("qhaar");
    const WaveletPyramid p = decompose(x, bank, 1);
    const Subbands sb = analyze_level(x, bank);
    CHECK(p.approx == sb.approx);
    CHECK(p.details[0] == sb.details);
}

TEST_CASE("perfect reconstruction and energy over depths and phases")
{
    for (const char* name : {"haar", "qhaar"}) {
        const FilterBank bank = builtin(name);
        for (int levels : {1, 2, 5}) {
            for (int phase : {0, 1}) {
                const QImage x = random_image(32, 100 + static_cast<std::uint64_t>(levels));
                const WaveletPyramid p = decompose(x, bank, levels, phase);
                CHECK(max_modulus_diff(reconstruct(p, bank), x) < 1e-12);
                CHECK(energy(p) == doctest::Approx(energy(x)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("zero inputs reconstruct to zero and approximation-only constants survive")
{
    const FilterBank bank = builtin("haar");
    const QImage zero(16, 16);
    CHECK(reconstruct(decompose(zero, bank, 3), bank) == zero);
    QImage c(16, 16);
    for (Quaternion& q : c)
        q = {0.2, 0.4, 0.1, 0.7};
    WaveletPyramid p = decompose(c, bank, 4);
    for (auto& level : p.details)
        for (auto& d : level)
            for (Quaternion& q : d)
                q = {};
    CHECK(max_modulus_diff(reconstruct(p, bank), c) < 1e-14);
}

TEST_CASE("reconstruction checks the bank name")
{
    const WaveletPyramid p = decompose(random_image(8, 1), builtin("haar"), 1);
    CHECK_THROWS(reconstruct(p, builtin("qhaar")));
}

TEST_CASE("canonical order visits the approximation first at the deepest level")
{
    const WaveletPyramid p = decompose(random_image(8, 2), builtin("haar"), 2);
    std::vector<CoefficientLocation> order;
    for_each_coefficient(p, [&](const CoefficientLocation& loc, const Quaternion&) { order.push_back(loc); });
    REQUIRE(order.size() == 64);
    CHECK(order.front().level == 1);
    CHECK(order.front().subband == 1);
    CHECK(std::is_sorted(order.begin(), order.end()));
    CHECK(order[48].level == 2);
    CHECK(order[48].subband == 0);
}

TEST_CASE("pyramid file round trip")
{
    const WaveletPyramid p = decompose(random_image(32, 9), builtin("qhaar"), 3, 1);
    const auto path = std::filesystem::temp_directory_path() / "qwave_test.qpyr";
    save_pyramid(p, path, {true});
    std::uint64_t hash = 0;
    PyramidFileInfo info;
    WaveletPyramid back = load_pyramid(path, &hash, &info);
    CHECK(hash == bank_hash("qhaar"));
    CHECK(info.has_nir);
    CHECK(back.levels == 3);
    CHECK(back.phase == 1);
    CHECK(back.approx == p.approx);
    CHECK(back.details == p.details);
    CHECK(std::filesystem::file_size(path) == 64 + 32u * 32u * 32u);
}
