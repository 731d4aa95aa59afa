#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qwave/filter_bank.hpp"

using namespace qwave;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& text)
{
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("built-in taps")
{
    const FilterBank haar = builtin("haar");
    CHECK(haar.analysis[0](0, 0) == Quaternion{0.5});
    CHECK(haar.analysis[2](1, 0) == Quaternion{-0.5});
    CHECK(haar.is_real());
    const FilterBank qhaar = builtin("qhaar");
    CHECK(qhaar.analysis[1](0, 0) == 0.5 * Quaternion::e1());
    CHECK(qhaar.analysis[3](0, 0) == 0.5 * Quaternion::e12());
    CHECK_FALSE(qhaar.is_real());
}

TEST_CASE("unknown built-in lists the choices")
{
    try {
        builtin("daub4");
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        CHECK(what.find("haar") != std::string::npos);
        CHECK(what.find("qhaar") != std::string::npos);
    }
}

TEST_CASE("built-in banks reconstruct perfectly")
{
    CHECK(validate_pr(builtin("haar"), 5, 32) < 1e-9);
    CHECK(validate_pr(builtin("qhaar"), 5, 32) < 1e-9);
    CHECK(validate_pr(builtin("qhaar"), 5, 64) < 1e-9);
}

TEST_CASE("a perturbed tap breaks the certificate")
{
    FilterBank bad = builtin("haar");
    bad.analysis[2](0, 1).a += 0.1;
    CHECK(validate_pr(bad, 5, 32) > 1e-3);
    CHECK_THROWS(validate_pr(builtin("haar"), 5, 48));
}

TEST_CASE("derived synthesis is the tap-wise conjugate")
{
    const QuaternionGrid a = builtin("qhaar").analysis[1];
    const QuaternionGrid s = derive_synthesis(a);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
            CHECK(s(k, l) == conj(a(k, l)));
}

TEST_CASE("unit-quaternion rotations of a subband keep perfect reconstruction")
{
    const Quaternion u = Quaternion{1, 2, -1, 0.5} / modulus(Quaternion{1, 2, -1, 0.5});
    const FilterBank rotated = rotate_subband(builtin("haar"), Subband::G2, u);
    CHECK(validate_pr(rotated, 3, 32) < 1e-9);
}

TEST_CASE("serializer and parser round trip")
{
    const FilterBank qhaar = builtin("qhaar");
    CHECK(parse_bank(format_bank(qhaar), "qhaar") == qhaar);
    const auto path = temp_file("qwave_rt.qwfb", format_bank(qhaar));
    FilterBank loaded = load_bank(path);
    CHECK(loaded.analysis == qhaar.analysis);
    CHECK(loaded.synthesis == qhaar.synthesis);
    CHECK_FALSE(loaded.warning.has_value());
}

TEST_CASE("analysis-only files get derived synthesis")
{
    const FilterBank parsed = parse_bank(format_bank(builtin("qhaar"), false), "q");
    CHECK(parsed.synthesis == builtin("qhaar").synthesis);
    CHECK(validate_pr(parsed, 3, 32) < 1e-9);
}

TEST_CASE("parse errors carry line numbers")
{
    const std::string good = format_bank(builtin("haar"), false);

    SUBCASE("bad header")
    {
        try {
            parse_bank("QWFB v2\n", "x");
            FAIL("expected an error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("shape mismatch in G2")
    {
        // Drop the last tap row of G2: the next section header then lands where a tap was expected.
        std::string text = good;
        const auto g2 = text.find("analysis G2");
        const auto g3 = text.find("analysis G3");
        const auto last = text.rfind('\n', g3 - 2);
        text.erase(last + 1, g3 - last - 1);
        try {
            parse_bank(text, "x");
            FAIL("expected an error");
        } catch (const ParseError& e) {
            const std::size_t g2_line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + g2, '\n')) + 1;
            CHECK(e.line() > g2_line);
            CHECK(e.line() <= g2_line + 4);
        }
    }
    SUBCASE("non-numeric tap")
    {
        std::string text = good;
        text.replace(text.find("0.5"), 3, "abc");
        try {
            parse_bank(text, "x");
            FAIL("expected an error");
        } catch (const ParseError& e) {
            CHECK(e.line() > 3);
            CHECK(std::string(e.what()).find("abc") != std::string::npos);
        }
    }
}

TEST_CASE("a loaded bank failing validation carries a warning")
{
    FilterBank bad = builtin("haar");
    bad.analysis[0](0, 0).a = 0.7;
    bad.synthesis = builtin("haar").synthesis;
    const auto path = temp_file("qwave_bad.qwfb", format_bank(bad));
    const FilterBank loaded = load_bank(path);
    CHECK(loaded.warning.has_value());
}
