#include "qwave/transform.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>

namespace qwave {

std::size_t WaveletPyramid::coefficient_count() const
{
    std::size_t n = approx.size();
    for (const auto& level : details)
        for (const auto& g : level)
            n += g.size();
    return n;
}

void WaveletPyramid::check_shapes() const
{
    if (levels < 1 || details.size() != static_cast<std::size_t>(levels))
        throw DimensionError("pyramid level count does not match its detail store");
    if (!is_power_of_two(side) || (side >> levels) == 0)
        throw DimensionError("pyramid side " + std::to_string(side) + " is inconsistent with " +
                             std::to_string(levels) + " levels");
    const std::size_t deepest = level_side(levels);
    if (approx.rows() != deepest || approx.cols() != deepest)
        throw DimensionError("approximation grid has the wrong size");
    for (int l = 1; l <= levels; ++l)
        for (const auto& g : details[l - 1])
            if (g.rows() != level_side(l) || g.cols() != level_side(l))
                throw DimensionError("detail grid at level " + std::to_string(l) + " has the wrong size");
}

WaveletPyramid WaveletPyramid::zeros_like() const
{
    WaveletPyramid z = *this;
    for_each_coefficient(z, [](const CoefficientLocation&, Quaternion& q) { q = {}; });
    return z;
}

int max_levels(std::size_t side, const FilterBank& bank)
{
    if (!is_power_of_two(side) || side < 2)
        return 0;
    const int by_taps = ceil_log2(side) - ceil_log2(bank.max_tap_dim()) + 1;
    return std::clamp(by_taps, 0, ceil_log2(side));
}

namespace {

void require_square_dyadic(const QuaternionGrid& x, const FilterBank& bank)
{
    if (x.rows() != x.cols())
        throw DimensionError("image must be square, got " + std::to_string(x.cols()) + "x" + std::to_string(x.rows()));
    if (!is_power_of_two(x.rows()) || x.rows() < 2)
        throw DimensionError("image side " + std::to_string(x.rows()) + " is not a power of two >= 2");
    if (x.rows() < bank.max_tap_dim())
        throw DimensionError("image side " + std::to_string(x.rows()) + " is smaller than the filter taps");
}

void require_phase(int phase)
{
    if (phase != 0 && phase != 1)
        throw std::invalid_argument("downsampling phase must be 0 or 1");
}

} // namespace

Subbands analyze_level(const QuaternionGrid& x, const FilterBank& bank, int phase)
{
    bank.check_shapes();
    require_square_dyadic(x, bank);
    require_phase(phase);

    const std::size_t s = x.rows();
    const std::size_t half = s / 2;
    const std::size_t kr = bank.taps_rows();
    const std::size_t kc = bank.taps_cols();

    Subbands out;
    out.approx = QuaternionGrid(half, half);
    for (auto& d : out.details)
        d = QuaternionGrid(half, half);
    std::array<QuaternionGrid*, 4> dst{&out.approx, &out.details[0], &out.details[1], &out.details[2]};

    for (std::size_t m = 0; m < half; ++m) {
        for (std::size_t n = 0; n < half; ++n) {
            std::array<Quaternion, 4> acc{};
            for (std::size_t k = 0; k < kr; ++k) {
                const std::size_t row = (2 * m + k + phase) % s;
                for (std::size_t l = 0; l < kc; ++l) {
                    const Quaternion& v = x(row, (2 * n + l + phase) % s);
                    for (int f = 0; f < 4; ++f)
                        acc[f] += bank.analysis[f](k, l) * v;
                }
            }
            for (int f = 0; f < 4; ++f)
                (*dst[f])(m, n) = acc[f];
        }
    }
    return out;
}

QuaternionGrid synthesize_level(const QuaternionGrid& approx, const DetailTriple& details, const FilterBank& bank,
                                int phase)
{
    bank.check_shapes();
    require_phase(phase);
    for (const auto& d : details)
        if (!d.same_shape(approx))
            throw DimensionError("subband grids differ in shape");
    if (approx.rows() != approx.cols() || approx.empty())
        throw DimensionError("subband grids must be square and non-empty");

    const std::size_t half = approx.rows();
    const std::size_t s = 2 * half;
    if (s < bank.max_tap_dim())
        throw DimensionError("subbands are too small for the filter taps");
    const std::size_t kr = bank.taps_rows();
    const std::size_t kc = bank.taps_cols();
    std::array<const QuaternionGrid*, 4> src{&approx, &details[0], &details[1], &details[2]};

    // Offsets are taken mod s before halving; s is even, so parity survives.
    auto source_index = [s, phase](std::size_t p, std::size_t k) { return (p + 2 * s - k - phase) % s; };

    QuaternionGrid x(s, s);
    for (std::size_t p = 0; p < s; ++p) {
        for (std::size_t q = 0; q < s; ++q) {
            Quaternion acc{};
            for (int f = 0; f < 4; ++f) {
                for (std::size_t k = 0; k < kr; ++k) {
                    const std::size_t rr = source_index(p, k);
                    if (rr % 2 != 0)
                        continue;
                    for (std::size_t l = 0; l < kc; ++l) {
                        const std::size_t cc = source_index(q, l);
                        if (cc % 2 != 0)
                            continue;
                        acc += bank.synthesis[f](k, l) * (*src[f])(rr / 2, cc / 2);
                    }
                }
            }
            x(p, q) = acc;
        }
    }
    return x;
}

WaveletPyramid decompose(const QImage& img, const FilterBank& bank, int levels, int phase)
{
    require_square_dyadic(img, bank);
    const int deepest = max_levels(img.rows(), bank);
    if (levels < 1 || levels > deepest)
        throw DimensionError("decomposition depth " + std::to_string(levels) + " is not admissible for a " +
                             std::to_string(img.rows()) + "x" + std::to_string(img.cols()) + " image (maximum " +
                             std::to_string(deepest) + ")");

    WaveletPyramid pyr;
    pyr.levels = levels;
    pyr.side = img.rows();
    pyr.bank_name = bank.name;
    pyr.phase = phase;
    pyr.details.reserve(levels);

    QuaternionGrid current = img;
    for (int l = 0; l < levels; ++l) {
        Subbands sb = analyze_level(current, bank, phase);
        pyr.details.push_back(std::move(sb.details));
        current = std::move(sb.approx);
    }
    pyr.approx = std::move(current);
    return pyr;
}

QImage reconstruct(const WaveletPyramid& pyr, const FilterBank& bank)
{
    pyr.check_shapes();
    if (!pyr.bank_name.empty() && pyr.bank_name != bank.name)
        throw std::invalid_argument("pyramid was built with bank '" + pyr.bank_name + "', not '" + bank.name + "'");
    if (pyr.levels > max_levels(pyr.side, bank))
        throw std::invalid_argument("pyramid is deeper than bank '" + bank.name + "' admits");

    QuaternionGrid current = pyr.approx;
    for (int l = pyr.levels; l >= 1; --l)
        current = synthesize_level(current, pyr.details[l - 1], bank, pyr.phase);
    return current;
}

// ---------------------------------------------------------------------------
// Binary pyramid files

namespace {

constexpr std::size_t header_size = 64;
constexpr char magic[8] = {'Q', 'P', 'Y', 'R', '1', 0, 0, 0};

template <typename T>
void put_le(unsigned char* p, T v)
{
    for (std::size_t i = 0; i < sizeof(T); ++i)
        p[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
}

template <typename T>
T get_le(const unsigned char* p)
{
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<T>(p[i]) << (8 * i);
    return v;
}

void put_double(unsigned char* p, double d)
{
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    put_le(p, bits);
}

double get_double(const unsigned char* p)
{
    const auto bits = get_le<std::uint64_t>(p);
    double d;
    std::memcpy(&d, &bits, sizeof d);
    return d;
}

} // namespace

void save_pyramid(const WaveletPyramid& pyr, const std::filesystem::path& path, PyramidFileInfo info)
{
    pyr.check_shapes();
    std::vector<unsigned char> buf(header_size + pyr.coefficient_count() * 4 * 8, 0);
    std::memcpy(buf.data(), magic, sizeof magic);
    put_le<std::uint32_t>(buf.data() + 8, static_cast<std::uint32_t>(pyr.levels));
    put_le<std::uint32_t>(buf.data() + 12, static_cast<std::uint32_t>(pyr.side));
    put_le<std::uint64_t>(buf.data() + 16, bank_hash(pyr.bank_name));
    put_le<std::uint32_t>(buf.data() + 24, static_cast<std::uint32_t>(pyr.phase));
    put_le<std::uint32_t>(buf.data() + 28, info.has_nir ? 1u : 0u);

    unsigned char* p = buf.data() + header_size;
    for_each_coefficient(pyr, [&](const CoefficientLocation&, const Quaternion& q) {
        for (double v : {q.a, q.b, q.c, q.d}) {
            put_double(p, v);
            p += 8;
        }
    });

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write pyramid file '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

WaveletPyramid load_pyramid(const std::filesystem::path& path, std::uint64_t* bank_name_hash, PyramidFileInfo* info)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open pyramid file '" + path.string() + "'");
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < header_size || std::memcmp(buf.data(), magic, sizeof magic) != 0)
        throw std::runtime_error("'" + path.string() + "' is not a QPYR1 pyramid file");

    WaveletPyramid pyr;
    pyr.levels = static_cast<int>(get_le<std::uint32_t>(buf.data() + 8));
    pyr.side = get_le<std::uint32_t>(buf.data() + 12);
    pyr.phase = static_cast<int>(get_le<std::uint32_t>(buf.data() + 24));
    if (bank_name_hash)
        *bank_name_hash = get_le<std::uint64_t>(buf.data() + 16);
    if (info)
        info->has_nir = (get_le<std::uint32_t>(buf.data() + 28) & 1u) != 0;

    if (pyr.levels < 1 || pyr.levels > 32 || !is_power_of_two(pyr.side) || (pyr.side >> pyr.levels) == 0)
        throw std::runtime_error("pyramid header has inconsistent side/levels");
    pyr.approx = QuaternionGrid(pyr.level_side(pyr.levels), pyr.level_side(pyr.levels));
    pyr.details.resize(pyr.levels);
    for (int l = 1; l <= pyr.levels; ++l)
        for (auto& g : pyr.details[l - 1])
            g = QuaternionGrid(pyr.level_side(l), pyr.level_side(l));

    if (buf.size() != header_size + pyr.coefficient_count() * 4 * 8)
        throw std::runtime_error("pyramid file '" + path.string() + "' has the wrong length");

    const unsigned char* p = buf.data() + header_size;
    for_each_coefficient(pyr, [&](const CoefficientLocation&, Quaternion& q) {
        q = {get_double(p), get_double(p + 8), get_double(p + 16), get_double(p + 24)};
        p += 32;
    });
    return pyr;
}

} // namespace qwave
