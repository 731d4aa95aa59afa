#include "qwave/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace qwave {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode)
{
    FilePtr f(std::fopen(path.string().c_str(), mode));
    if (!f)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    return f;
}

struct Decoded {
    std::size_t width = 0, height = 0;
    int channels = 0; // after transforms: 1 (grey) or 3 (rgb)
    int bit_depth = 8;
    std::vector<std::uint16_t> samples; // row-major, interleaved
};

Decoded decode_png(const std::filesystem::path& path)
{
    FilePtr f = open_file(path, "rb");
    unsigned char sig[8] = {};
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw std::runtime_error("'" + path.string() + "' is not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw std::runtime_error("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("libpng initialisation failed");
    }

    Decoded out;
    std::vector<png_bytep> rows;
    std::vector<unsigned char> raw;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("failed to decode PNG '" + path.string() + "'");
    }

    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (color & PNG_COLOR_MASK_ALPHA)
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.channels = png_get_channels(png, info);
    out.bit_depth = png_get_bit_depth(png, info) == 16 ? 16 : 8;
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    raw.resize(rowbytes * out.height);
    rows.resize(out.height);
    for (std::size_t y = 0; y < out.height; ++y)
        rows[y] = raw.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const std::size_t n = out.width * out.height * static_cast<std::size_t>(out.channels);
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = out.bit_depth == 16 ? static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]) : raw[i];
    return out;
}

void encode_png(const std::filesystem::path& path, std::size_t width, std::size_t height, int channels, int bit_depth,
                const std::vector<std::uint16_t>& samples)
{
    if (bit_depth != 8 && bit_depth != 16)
        throw std::invalid_argument("PNG output depth must be 8 or 16");
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw std::runtime_error("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng initialisation failed");
    }

    const std::size_t bytes = bit_depth / 8;
    const std::size_t rowbytes = width * static_cast<std::size_t>(channels) * bytes;
    std::vector<unsigned char> raw(rowbytes * height);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (bytes == 2) {
            raw[2 * i] = static_cast<unsigned char>(samples[i] >> 8);
            raw[2 * i + 1] = static_cast<unsigned char>(samples[i] & 0xff);
        } else {
            raw[i] = static_cast<unsigned char>(samples[i]);
        }
    }
    std::vector<png_bytep> rows(height);
    for (std::size_t y = 0; y < height; ++y)
        rows[y] = raw.data() + y * rowbytes;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("failed to encode PNG '" + path.string() + "'");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

double max_value(int bit_depth) { return bit_depth == 16 ? 65535.0 : 255.0; }

std::uint16_t quantize(double v, int bit_depth)
{
    const double m = max_value(bit_depth);
    return static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * m));
}

bool is_pgm(const std::filesystem::path& p)
{
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".pgm";
}

RasterGray read_pgm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    auto next_token = [&]() {
        std::string tok;
        char ch;
        while (in.get(ch)) {
            if (ch == '#') {
                std::string skip;
                std::getline(in, skip);
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) {
                if (!tok.empty())
                    break;
                continue;
            }
            tok += ch;
        }
        return tok;
    };
    if (next_token() != "P5")
        throw std::runtime_error("'" + path.string() + "' is not a binary PGM (P5) file");
    std::size_t w = 0, h = 0;
    long maxval = 0;
    try {
        w = std::stoul(next_token());
        h = std::stoul(next_token());
        maxval = std::stol(next_token());
    } catch (const std::exception&) {
        throw std::runtime_error("malformed PGM header in '" + path.string() + "'");
    }
    if (w == 0 || h == 0 || maxval <= 0 || maxval > 65535)
        throw std::runtime_error("unsupported PGM header in '" + path.string() + "'");

    const std::size_t bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(w * h * bytes);
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
        throw std::runtime_error("truncated PGM data in '" + path.string() + "'");

    RasterGray out;
    out.bit_depth = bytes == 2 ? 16 : 8;
    out.v = Plane(h, w);
    for (std::size_t i = 0; i < w * h; ++i) {
        const unsigned v = bytes == 2 ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
        out.v.values()[i] = static_cast<double>(v) / static_cast<double>(maxval);
    }
    return out;
}

} // namespace

RasterRGB read_png_rgb(const std::filesystem::path& path)
{
    const Decoded d = decode_png(path);
    RasterRGB out;
    out.bit_depth = d.bit_depth;
    out.r = Plane(d.height, d.width);
    out.g = out.r;
    out.b = out.r;
    const double m = max_value(d.bit_depth);
    for (std::size_t i = 0; i < d.width * d.height; ++i) {
        if (d.channels >= 3) {
            out.r.values()[i] = d.samples[3 * i] / m;
            out.g.values()[i] = d.samples[3 * i + 1] / m;
            out.b.values()[i] = d.samples[3 * i + 2] / m;
        } else {
            out.r.values()[i] = out.g.values()[i] = out.b.values()[i] = d.samples[i] / m;
        }
    }
    return out;
}

RasterGray read_gray(const std::filesystem::path& path)
{
    if (is_pgm(path))
        return read_pgm(path);
    const Decoded d = decode_png(path);
    if (d.channels != 1)
        throw std::runtime_error("'" + path.string() + "' is not a single-plane image");
    RasterGray out;
    out.bit_depth = d.bit_depth;
    out.v = Plane(d.height, d.width);
    const double m = max_value(d.bit_depth);
    for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v.values()[i] = d.samples[i] / m;
    return out;
}

void write_png_rgb(const std::filesystem::path& path, const Plane& r, const Plane& g, const Plane& b, int bit_depth)
{
    std::vector<std::uint16_t> s(r.size() * 3);
    for (std::size_t i = 0; i < r.size(); ++i) {
        s[3 * i] = quantize(r.values()[i], bit_depth);
        s[3 * i + 1] = quantize(g.values()[i], bit_depth);
        s[3 * i + 2] = quantize(b.values()[i], bit_depth);
    }
    encode_png(path, r.cols(), r.rows(), 3, bit_depth, s);
}

void write_png_gray(const std::filesystem::path& path, const Plane& v, int bit_depth)
{
    std::vector<std::uint16_t> s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        s[i] = quantize(v.values()[i], bit_depth);
    encode_png(path, v.cols(), v.rows(), 1, bit_depth, s);
}

void write_pgm(const std::filesystem::path& path, const Plane& v, int bit_depth)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "P5\n" << v.cols() << ' ' << v.rows() << '\n' << (bit_depth == 16 ? 65535 : 255) << '\n';
    for (double x : v) {
        const std::uint16_t q = quantize(x, bit_depth);
        if (bit_depth == 16)
            out.put(static_cast<char>(q >> 8));
        out.put(static_cast<char>(q & 0xff));
    }
}

LoadedImage load_image(const std::filesystem::path& rgb, const std::filesystem::path& nir)
{
    RasterRGB c = read_png_rgb(rgb);
    LoadedImage out;
    out.bit_depth = c.bit_depth;
    out.image.r = std::move(c.r);
    out.image.g = std::move(c.g);
    out.image.b = std::move(c.b);
    if (!nir.empty()) {
        RasterGray n = read_gray(nir);
        out.image.nir = std::move(n.v);
        out.bit_depth = std::max(out.bit_depth, n.bit_depth);
    }
    out.image.validate();
    return out;
}

void save_image(const ChannelImage& img, int bit_depth, const std::filesystem::path& rgb_path,
                const std::filesystem::path& nir_path)
{
    write_png_rgb(rgb_path, img.r, img.g, img.b, bit_depth);
    if (img.nir) {
        if (is_pgm(nir_path))
            write_pgm(nir_path, *img.nir, bit_depth);
        else
            write_png_gray(nir_path, *img.nir, bit_depth);
    }
}

Plane gaussian_blur(const Plane& p, double sigma)
{
    if (!(sigma > 0.0))
        return p;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> w(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        w[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += w[i + radius];
    }
    for (double& v : w)
        v /= sum;

    const auto rows = static_cast<long>(p.rows());
    const auto cols = static_cast<long>(p.cols());
    auto wrap = [](long i, long n) { return static_cast<std::size_t>(((i % n) + n) % n); };

    Plane tmp(p.rows(), p.cols());
    for (long y = 0; y < rows; ++y)
        for (long x = 0; x < cols; ++x) {
            double s = 0.0;
            for (int k = -radius; k <= radius; ++k)
                s += w[k + radius] * p(static_cast<std::size_t>(y), wrap(x + k, cols));
            tmp(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = s;
        }
    Plane out(p.rows(), p.cols());
    for (long y = 0; y < rows; ++y)
        for (long x = 0; x < cols; ++x) {
            double s = 0.0;
            for (int k = -radius; k <= radius; ++k)
                s += w[k + radius] * tmp(wrap(y + k, rows), static_cast<std::size_t>(x));
            out(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = s;
        }
    return out;
}

ChannelImage gaussian_blur(const ChannelImage& img, double sigma)
{
    ChannelImage out = img;
    for (Plane* p : out.planes())
        *p = gaussian_blur(*p, sigma);
    return out;
}

QImage add_gaussian_noise(const QImage& img, double sigma, std::uint64_t seed, bool include_scalar)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, sigma);
    QImage out = img;
    for (Quaternion& q : out) {
        if (include_scalar)
            q.a += n(rng);
        q.b += n(rng);
        q.c += n(rng);
        q.d += n(rng);
    }
    return out;
}

} // namespace qwave
