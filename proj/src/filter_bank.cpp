#include "qwave/filter_bank.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "qwave/transform.hpp"

namespace qwave {

bool FilterBank::is_real() const
{
    for (const auto* set : {&analysis, &synthesis})
        for (const auto& g : *set)
            for (const Quaternion& q : g)
                if (q.b != 0.0 || q.c != 0.0 || q.d != 0.0)
                    return false;
    return true;
}

void FilterBank::check_shapes() const
{
    if (analysis[0].empty())
        throw std::invalid_argument("filter bank '" + name + "' has empty taps");
    for (int i = 0; i < 4; ++i) {
        if (!analysis[i].same_shape(analysis[0]))
            throw std::invalid_argument("analysis " + std::string(subband_names[i]) + " has a different shape");
        if (!synthesis[i].same_shape(analysis[0]))
            throw std::invalid_argument("synthesis " + std::string(subband_names[i]) + " has a different shape");
    }
}

QuaternionGrid derive_synthesis(const QuaternionGrid& analysis_taps)
{
    QuaternionGrid out(analysis_taps.rows(), analysis_taps.cols());
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
            out(r, c) = conj(analysis_taps(r, c));
    return out;
}

std::vector<std::string> builtin_names() { return {"haar", "qhaar"}; }

namespace {

QuaternionGrid taps2x2(double t00, double t01, double t10, double t11)
{
    QuaternionGrid g(2, 2);
    g(0, 0) = 0.5 * t00;
    g(0, 1) = 0.5 * t01;
    g(1, 0) = 0.5 * t10;
    g(1, 1) = 0.5 * t11;
    return g;
}

FilterBank haar()
{
    FilterBank bank;
    bank.name = "haar";
    bank.analysis = {taps2x2(1, 1, 1, 1), taps2x2(1, -1, 1, -1), taps2x2(1, 1, -1, -1), taps2x2(1, -1, -1, 1)};
    for (int i = 0; i < 4; ++i)
        bank.synthesis[i] = derive_synthesis(bank.analysis[i]);
    return bank;
}

} // namespace

FilterBank rotate_subband(const FilterBank& bank, Subband s, const Quaternion& u)
{
    FilterBank out = bank;
    auto& taps = out.analysis[static_cast<int>(s)];
    for (Quaternion& q : taps)
        q = u * q;
    out.synthesis[static_cast<int>(s)] = derive_synthesis(taps);
    return out;
}

FilterBank builtin(const std::string& name)
{
    if (name == "haar")
        return haar();
    if (name == "qhaar") {
        FilterBank bank = haar();
        bank = rotate_subband(bank, Subband::G1, Quaternion::e1());
        bank = rotate_subband(bank, Subband::G2, Quaternion::e2());
        bank = rotate_subband(bank, Subband::G3, Quaternion::e12());
        bank.name = "qhaar";
        return bank;
    }
    std::string list;
    for (const auto& n : builtin_names())
        list += (list.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown built-in filter bank '" + name + "' (available: " + list + ")");
}

// ---------------------------------------------------------------------------
// QWFB v1

namespace {

std::vector<std::string> split_ws(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

double parse_real(const std::string& tok, std::size_t line)
{
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(line, "non-numeric tap value '" + tok + "'");
    return v;
}

std::size_t parse_count(const std::string& tok, std::size_t line)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || v == 0)
        throw ParseError(line, "expected a positive integer, got '" + tok + "'");
    return v;
}

} // namespace

FilterBank parse_bank(const std::string& text, const std::string& name)
{
    // Significant lines only, each tagged with its 1-based line number.
    std::vector<std::pair<std::size_t, std::string>> lines;
    {
        std::istringstream is(text);
        std::string line;
        std::size_t no = 0;
        while (std::getline(is, line)) {
            ++no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#')
                continue;
            lines.emplace_back(no, line.substr(first));
        }
    }

    std::size_t pos = 0;
    auto last_line = [&] { return lines.empty() ? std::size_t{1} : lines.back().first; };
    if (pos >= lines.size() || split_ws(lines[pos].second) != std::vector<std::string>{"QWFB", "v1"})
        throw ParseError(pos < lines.size() ? lines[pos].first : 1, "expected header 'QWFB v1'");
    ++pos;

    if (pos >= lines.size())
        throw ParseError(last_line(), "missing 'taps <rows> <cols>' line");
    const auto taps = split_ws(lines[pos].second);
    if (taps.size() != 3 || taps[0] != "taps")
        throw ParseError(lines[pos].first, "expected 'taps <rows> <cols>'");
    const std::size_t rows = parse_count(taps[1], lines[pos].first);
    const std::size_t cols = parse_count(taps[2], lines[pos].first);
    ++pos;

    FilterBank bank;
    bank.name = name;
    bool have_synthesis = false;
    for (int section = 0; section < 8; ++section) {
        const bool is_synthesis = section >= 4;
        const int band = section % 4;
        if (pos >= lines.size()) {
            if (section == 4)
                break;
            throw ParseError(last_line(), std::string("missing section 'analysis ") + subband_names[band] + "'");
        }
        const std::size_t header_line = lines[pos].first;
        const auto header = split_ws(lines[pos].second);
        const std::string kind = is_synthesis ? "synthesis" : "analysis";
        if (header.size() != 2 || header[0] != kind || header[1] != subband_names[band])
            throw ParseError(header_line, "expected section '" + kind + " " + subband_names[band] + "'");
        ++pos;

        QuaternionGrid grid(rows, cols);
        for (std::size_t i = 0; i < rows * cols; ++i) {
            if (pos >= lines.size())
                throw ParseError(last_line(), "section '" + kind + " " + subband_names[band] + "' has " +
                                                  std::to_string(i) + " taps, expected " +
                                                  std::to_string(rows * cols));
            const auto [no, text_line] = lines[pos];
            const auto parts = split_ws(text_line);
            if (parts.size() == 2 && (parts[0] == "analysis" || parts[0] == "synthesis"))
                throw ParseError(no, "section '" + kind + " " + subband_names[band] + "' has " + std::to_string(i) +
                                         " taps, expected " + std::to_string(rows * cols) + " (shape mismatch)");
            if (parts.size() != 4)
                throw ParseError(no, "expected four reals 'a b c d'");
            grid(i / cols, i % cols) = {parse_real(parts[0], no), parse_real(parts[1], no), parse_real(parts[2], no),
                                        parse_real(parts[3], no)};
            ++pos;
        }
        (is_synthesis ? bank.synthesis : bank.analysis)[band] = std::move(grid);
        if (is_synthesis)
            have_synthesis = true;
    }
    if (pos < lines.size())
        throw ParseError(lines[pos].first, "unexpected content after the last section (shape mismatch?)");

    if (!have_synthesis)
        for (int i = 0; i < 4; ++i)
            bank.synthesis[i] = derive_synthesis(bank.analysis[i]);
    return bank;
}

namespace {

std::size_t certificate_size(const FilterBank& bank)
{
    std::size_t s = 32;
    while (s < 2 * bank.max_tap_dim())
        s *= 2;
    return s;
}

} // namespace

FilterBank load_bank(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open filter bank file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    FilterBank bank = parse_bank(ss.str(), path.stem().string());

    const double err = validate_pr(bank, 3, certificate_size(bank));
    if (!(err < pr_tolerance)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "perfect-reconstruction check failed: max round-trip error %.3e", err);
        bank.warning = buf;
    }
    return bank;
}

std::string format_bank(const FilterBank& bank, bool with_synthesis)
{
    bank.check_shapes();
    std::string out = "QWFB v1\n";
    out += "# " + bank.name + "\n";
    out += "taps " + std::to_string(bank.taps_rows()) + " " + std::to_string(bank.taps_cols()) + "\n";
    char buf[128];
    auto section = [&](const char* kind, int band, const QuaternionGrid& g) {
        out += std::string(kind) + " " + subband_names[band] + "\n";
        for (const Quaternion& q : g) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", q.a, q.b, q.c, q.d);
            out += buf;
        }
    };
    for (int i = 0; i < 4; ++i)
        section("analysis", i, bank.analysis[i]);
    if (with_synthesis)
        for (int i = 0; i < 4; ++i)
            section("synthesis", i, bank.synthesis[i]);
    return out;
}

void save_bank(const FilterBank& bank, const std::filesystem::path& path, bool with_synthesis)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write filter bank file '" + path.string() + "'");
    out << format_bank(bank, with_synthesis);
}

double validate_pr(const FilterBank& bank, int trials, std::size_t size, std::uint64_t seed)
{
    if (trials < 1)
        throw std::invalid_argument("validate_pr needs at least one trial");
    if (!is_power_of_two(size))
        throw std::invalid_argument("validate_pr size " + std::to_string(size) + " is not a power of two");
    if (size < bank.max_tap_dim())
        throw std::invalid_argument("validate_pr size is smaller than the filter taps");
    bank.check_shapes();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        QuaternionGrid x(size, size);
        for (Quaternion& q : x)
            q = {u(rng), u(rng), u(rng), u(rng)};
        const Subbands sb = analyze_level(x, bank);
        const QuaternionGrid y = synthesize_level(sb.approx, sb.details, bank);
        worst = std::max(worst, max_modulus_diff(x, y));
    }
    return worst;
}

std::uint64_t bank_hash(const std::string& name)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace qwave
