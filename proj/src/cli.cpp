#include "qwave/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "qwave/douglas_rachford.hpp"
#include "qwave/filter_bank.hpp"
#include "qwave/image_io.hpp"
#include "qwave/metrics.hpp"
#include "qwave/processing.hpp"
#include "qwave/transform.hpp"

namespace qwave::cli {

namespace fs = std::filesystem;

namespace {

// Thrown for inputs that violate a documented precondition.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string bank = "qhaar";
    std::optional<int> levels;
    int phase = 0;
    fs::path rgb, nir;
    fs::path out, out_nir, report;
    std::uint64_t seed = 0;

    double keep = 0.10;
    double gain = 1.25;
    double blur = 0.0;
    std::optional<double> add_noise;
    std::optional<double> sigma;
    std::optional<double> threshold;
    std::string mode = "soft";
    std::string channel_bank = "haar";
    fs::path out_noisy, out_blurred;

    int trials = 5;
    std::size_t size = 64;

    fs::path pyramid;
    int depth = 8;

    fs::path sets;
    std::vector<double> x0;
    double tol = 1e-6;
    std::size_t max_iter = 10000;
};

std::string fmt(const char* f, double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

FilterBank resolve_bank(const std::string& spec, std::ostream& err)
{
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), spec) != names.end())
        return builtin(spec);
    if (fs::exists(spec)) {
        FilterBank bank = load_bank(spec);
        if (bank.warning)
            err << "warning: bank '" << bank.name << "': " << *bank.warning << "\n";
        return bank;
    }
    std::string list;
    for (const auto& n : names)
        list += (list.empty() ? "" : ", ") + n;
    throw UsageError("--bank '" + spec + "' is neither a built-in bank (" + list + ") nor a readable QWFB file");
}

fs::path nir_output_path(const RunConfig& cfg)
{
    if (!cfg.out_nir.empty())
        return cfg.out_nir;
    fs::path p = cfg.out;
    return p.replace_filename(p.stem().string() + "_nir.png");
}

LoadedImage load_input(const RunConfig& cfg)
{
    if (cfg.rgb.empty())
        throw UsageError("--rgb is required");
    LoadedImage in = load_image(cfg.rgb, cfg.nir);
    const std::size_t w = in.image.width();
    const std::size_t h = in.image.height();
    if (w != h || !is_power_of_two(w) || w < 2)
        throw UsageError("input is " + std::to_string(w) + "x" + std::to_string(h) +
                         "; the transform needs a square image whose side is a power of two");
    return in;
}

int resolve_levels(const RunConfig& cfg, std::size_t side, const FilterBank& bank, int fallback)
{
    const int deepest = max_levels(side, bank);
    const int levels = cfg.levels.value_or(fallback > 0 ? fallback : deepest);
    if (levels < 1 || levels > deepest)
        throw UsageError("--levels " + std::to_string(levels) + " is not admissible for a " + std::to_string(side) +
                         "x" + std::to_string(side) + " image with bank '" + bank.name + "' (maximum L = " +
                         std::to_string(deepest) + ")");
    return levels;
}

void write_outputs(const RunConfig& cfg, const ChannelImage& img, int depth, std::ostream& out)
{
    if (cfg.out.empty())
        return;
    const fs::path nir_path = nir_output_path(cfg);
    save_image(img, depth, cfg.out, nir_path);
    out << "wrote " << cfg.out.string();
    if (img.has_nir())
        out << " and " << nir_path.string();
    out << "\n";
}

// Float-domain (unclamped) and post-clamp quality of `q` against `ref`.
void metrics_block(std::ostream& out, const std::string& label, const ChannelImage& ref, const QImage& q)
{
    const ChannelImage raw = extract(q, ref.has_nir(), false);
    const ChannelImage clamped = extract(q, ref.has_nir(), true);
    out << "metrics " << label << ": psnr_float=" << fmt("%.4f", psnr(ref, raw)) << " dB"
        << " ssim_float=" << fmt("%.4f", ssim(ref, raw)) << " psnr_clamped=" << fmt("%.4f", psnr(ref, clamped))
        << " dB ssim_clamped=" << fmt("%.4f", ssim(ref, clamped)) << "\n";
}

// Rounds every sample to the file's bit depth, as a written output would be.
ChannelImage quantize(ChannelImage img, int depth)
{
    const double top = depth == 16 ? 65535.0 : 255.0;
    for (Plane* p : img.planes())
        for (double& v : *p)
            v = std::round(std::clamp(v, 0.0, 1.0) * top) / top;
    return img;
}

bool ssim_applicable(const ChannelImage& img) { return img.width() >= 11 && img.height() >= 11; }

void maybe_metrics(std::ostream& out, const std::string& label, const ChannelImage& ref, const QImage& q)
{
    if (ssim_applicable(ref))
        metrics_block(out, label, ref, q);
    else
        out << "metrics " << label << ": psnr_float=" << fmt("%.4f", psnr(ref, extract(q, ref.has_nir(), false)))
            << " dB (image too small for SSIM)\n";
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    if (!is_power_of_two(cfg.size))
        throw UsageError("--size must be a power of two");
    const double e = validate_pr(bank, cfg.trials, cfg.size, cfg.seed + 1);
    bank.check_shapes();
    double ein = 0.0, eout = 0.0;
    {
        std::mt19937_64 rng(cfg.seed + 7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        QuaternionGrid x(cfg.size, cfg.size);
        for (Quaternion& q : x)
            q = {u(rng), u(rng), u(rng), u(rng)};
        ein = energy(x);
        eout = energy(decompose(x, bank, 1));
    }
    const double rel = std::abs(eout - ein) / ein;
    out << "bank " << bank.name << " taps " << bank.taps_rows() << "x" << bank.taps_cols() << "\n";
    out << "pr_max_error " << fmt("%.3e", e) << "\n";
    out << "energy_relative_error " << fmt("%.3e", rel) << "\n";
    const bool ok = e < pr_tolerance;
    out << (ok ? "valid" : "INVALID") << "\n";
    return ok ? exit_ok : exit_not_converged;
}

int cmd_roundtrip(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 0);
    const QImage x = embed(in.image);
    const QImage y = reconstruct(decompose(x, bank, levels, cfg.phase), bank);
    const double e = max_modulus_diff(x, y);
    out << "bank " << bank.name << " levels " << levels << " size " << in.image.width() << "\n";
    out << "max_modulus_error " << fmt("%.3e", e) << "\n";
    out << "psnr_float " << fmt("%.4f", psnr(in.image, extract(y, in.image.has_nir(), false))) << "\n";
    out << "psnr_quantized " << fmt("%.4f", psnr(in.image, quantize(extract(y, in.image.has_nir()), in.bit_depth)))
        << "\n";
    write_outputs(cfg, extract(y, in.image.has_nir()), in.bit_depth, out);
    return e < pr_tolerance ? exit_ok : exit_not_converged;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 0);
    if (cfg.out.empty())
        throw UsageError("decompose needs --out <pyramid file>");
    const WaveletPyramid pyr = decompose(embed(in.image), bank, levels, cfg.phase);
    save_pyramid(pyr, cfg.out, {in.image.has_nir()});
    out << "wrote " << cfg.out.string() << " (" << pyr.coefficient_count() << " coefficients, L = " << levels << ")\n";
    return exit_ok;
}

int cmd_reconstruct(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    if (cfg.pyramid.empty() || cfg.out.empty())
        throw UsageError("reconstruct needs --pyramid <file> and --out <image>");
    std::uint64_t hash = 0;
    PyramidFileInfo info;
    WaveletPyramid pyr = load_pyramid(cfg.pyramid, &hash, &info);
    if (hash != bank_hash(bank.name))
        throw UsageError("pyramid was not produced with bank '" + bank.name + "'");
    pyr.bank_name = bank.name;
    const QImage y = reconstruct(pyr, bank);
    write_outputs(cfg, extract(y, info.has_nir), cfg.depth, out);
    return exit_ok;
}

int cmd_compress(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 8);
    const CompressResult res = compress(decompose(embed(in.image), bank, levels, cfg.phase), cfg.keep);
    const QImage y = reconstruct(res.pyramid, bank);
    out << "bank " << bank.name << " levels " << levels << " keep " << cfg.keep << "\n";
    out << "kept_count " << res.report.kept_count << " of " << res.report.total_count << "\n";
    out << "threshold_value " << fmt("%.6g", res.report.threshold_value) << "\n";
    maybe_metrics(out, "original", in.image, embed(in.image));
    maybe_metrics(out, "compressed", in.image, y);
    if (!cfg.report.empty()) {
        save_report(res.report, cfg.report);
        out << "wrote report " << cfg.report.string() << "\n";
    }
    write_outputs(cfg, extract(y, in.image.has_nir()), in.bit_depth, out);
    return exit_ok;
}

int cmd_enhance(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 8);
    if (cfg.blur < 0.0)
        throw UsageError("--blur must be non-negative");

    const ChannelImage source = cfg.blur > 0.0 ? gaussian_blur(in.image, cfg.blur) : in.image;
    const QImage x = embed(source);
    const QImage y = reconstruct(enhance(decompose(x, bank, levels, cfg.phase), cfg.gain), bank);
    out << "bank " << bank.name << " levels " << levels << " gain " << cfg.gain << " blur " << cfg.blur << "\n";
    if (cfg.blur > 0.0)
        maybe_metrics(out, "blurry", in.image, x);
    maybe_metrics(out, "enhanced", in.image, y);
    out << "max_change_vs_input " << fmt("%.3e", max_modulus_diff(x, y)) << "\n";
    if (!cfg.out_blurred.empty() && cfg.blur > 0.0) {
        RunConfig b = cfg;
        b.out = cfg.out_blurred;
        b.out_nir.clear();
        write_outputs(b, source, in.bit_depth, out);
    }
    write_outputs(cfg, extract(y, in.image.has_nir()), in.bit_depth, out);
    return exit_ok;
}

int cmd_edges(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 6);
    const QImage y = reconstruct(edges(decompose(embed(in.image), bank, levels, cfg.phase)), bank);
    out << "bank " << bank.name << " levels " << levels << "\n";
    out << "edge_energy " << fmt("%.6g", energy(y)) << "\n";
    write_outputs(cfg, extract(y, in.image.has_nir()), in.bit_depth, out);
    return exit_ok;
}

int cmd_denoise(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 4);
    const ThresholdMode mode = parse_threshold_mode(cfg.mode);

    QImage x = embed(in.image);
    if (cfg.add_noise) {
        if (!(*cfg.add_noise > 0.0))
            throw UsageError("--add-noise must be positive");
        x = add_gaussian_noise(x, *cfg.add_noise, cfg.seed, in.image.has_nir());
    }
    double t = 0.0;
    if (cfg.threshold) {
        t = *cfg.threshold;
    } else {
        const std::optional<double> sigma = cfg.sigma ? cfg.sigma : cfg.add_noise;
        if (!sigma)
            throw UsageError("denoise needs --sigma, --threshold, or --add-noise to fix the threshold");
        t = visu_threshold(*sigma, x.size());
    }
    const QImage y = reconstruct(denoise(decompose(x, bank, levels, cfg.phase), t, mode), bank);
    out << "bank " << bank.name << " levels " << levels << " mode " << cfg.mode << " threshold " << fmt("%.6g", t)
        << "\n";
    if (cfg.add_noise) {
        maybe_metrics(out, "noisy", in.image, x);
        maybe_metrics(out, "denoised", in.image, y);
        if (!cfg.out_noisy.empty()) {
            RunConfig b = cfg;
            b.out = cfg.out_noisy;
            b.out_nir.clear();
            write_outputs(b, extract(x, in.image.has_nir()), in.bit_depth, out);
        }
    }
    write_outputs(cfg, extract(y, in.image.has_nir()), in.bit_depth, out);
    return exit_ok;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 8);
    const QImage x = embed(in.image);
    if (energy(x) == 0.0)
        throw UsageError("image has zero energy; the cumulative profile is undefined");
    const EnergyProfile pi = cumulative_profile(x);
    const EnergyProfile pd = cumulative_profile(decompose(x, bank, levels, cfg.phase));
    out << "bank " << bank.name << " levels " << levels << "\n";
    for (double f : {0.9, 0.99, 0.999})
        out << "coefficients_to_" << f << " image=" << pi.count_to_reach(f) << " decomposition=" << pd.count_to_reach(f)
            << "\n";
    if (!cfg.out.empty()) {
        write_text(cfg.out, format_profiles_csv(pi, pd));
        out << "wrote " << cfg.out.string() << "\n";
    }
    return exit_ok;
}

int cmd_locations(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FilterBank bank = resolve_bank(cfg.bank, err);
    const FilterBank channel_bank = resolve_bank(cfg.channel_bank, err);
    const LoadedImage in = load_input(cfg);
    const int levels = resolve_levels(cfg, in.image.width(), bank, 8);
    if (levels > max_levels(in.image.width(), channel_bank))
        throw UsageError("--levels exceeds what the channel bank admits");

    const QImage x = embed(in.image);
    const ThresholdReport q = compress(decompose(x, bank, levels, cfg.phase), cfg.keep).report;
    const auto channels = compress_channelwise(x, channel_bank, levels, cfg.keep);
    const LocationComparison cmp = location_overhead(q, channels);

    std::ostringstream summary;
    summary << "bank " << bank.name << " channel_bank " << channel_bank.name << " levels " << levels << " keep "
            << cfg.keep << "\n";
    summary << "total_coefficients " << q.total_count << "\n";
    summary << "quaternion_locations " << cmp.quaternion_count << "\n";
    const char* names[4] = {"nir", "r", "g", "b"};
    for (int c = 0; c < 4; ++c)
        summary << "channel_locations_" << names[c] << " " << cmp.channel_counts[c] << "\n";
    summary << "channel_locations_total " << cmp.channel_total << "\n";
    summary << "channel_union " << cmp.union_count << "\n";
    summary << "union_ratio " << fmt("%.6f", cmp.union_ratio) << "\n";
    out << summary.str();
    if (!cfg.report.empty()) {
        write_text(cfg.report, summary.str());
        out << "wrote " << cfg.report.string() << "\n";
    }
    if (!cfg.out.empty()) {
        fs::create_directories(cfg.out);
        save_report(q, cfg.out / "quaternion.txt");
        for (int c = 0; c < 4; ++c)
            save_report(channels[c], cfg.out / (std::string(names[c]) + ".txt"));
        out << "wrote location sets to " << cfg.out.string() << "\n";
    }
    return exit_ok;
}

int cmd_polar(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    if (cfg.rgb.empty())
        throw UsageError("--rgb is required");
    const LoadedImage in = load_image(cfg.rgb, cfg.nir);
    const auto samples = polar_export(embed(in.image));
    if (cfg.out.empty())
        throw UsageError("polar needs --out <csv>");
    write_text(cfg.out, format_polar_csv(samples));
    out << "wrote " << cfg.out.string() << "\n";
    return exit_ok;
}

int cmd_dr(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    if (cfg.sets.empty())
        throw UsageError("dr needs --sets <file>");
    dr::Problem p = dr::load_problem(cfg.sets);
    if (p.sets.size() < 2)
        throw UsageError("set file must list at least two sets");
    dr::Vector x0;
    if (!cfg.x0.empty()) {
        x0 = Eigen::Map<const dr::Vector>(cfg.x0.data(), static_cast<Eigen::Index>(cfg.x0.size()));
    } else if (p.x0) {
        x0 = *p.x0;
    } else {
        throw UsageError("no starting point: pass --x0 or add an 'x0' line to the set file");
    }
    if (x0.size() != p.sets.front().dimension())
        throw UsageError("--x0 has " + std::to_string(x0.size()) + " coordinates, sets live in R^" +
                         std::to_string(p.sets.front().dimension()));

    const dr::Trace trace = dr::solve(p.sets, x0, cfg.tol, cfg.max_iter);
    out << "sets " << p.sets.size() << (p.sets.size() > 2 ? " (product-space reformulation)" : "") << "\n";
    out << "converged " << (trace.converged ? "true" : "false") << "\n";
    out << "iterations " << trace.iterations << "\n";
    out << "residual " << fmt("%.3e", trace.residual) << "\n";
    std::ostringstream shadow;
    shadow << trace.shadows.back().transpose();
    out << "shadow " << shadow.str() << "\n";
    if (!cfg.out.empty()) {
        write_text(cfg.out, dr::format_trace_csv(trace));
        out << "wrote " << cfg.out.string() << "\n";
    }
    return trace.converged ? exit_ok : exit_not_converged;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quaternionic wavelet colour image toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto image_flags = [&](CLI::App* sub) {
        sub->add_option("--bank", cfg.bank, "built-in bank (haar, qhaar) or QWFB file")->capture_default_str();
        sub->add_option("--levels", cfg.levels, "decomposition depth");
        sub->add_option("--phase", cfg.phase, "downsampling phase (expert)")->check(CLI::Range(0, 1));
        sub->add_option("--rgb", cfg.rgb, "RGB PNG input");
        sub->add_option("--nir", cfg.nir, "NIR plane (PNG or PGM)");
        sub->add_option("--out", cfg.out, "output path");
        sub->add_option("--out-nir", cfg.out_nir, "NIR output path (default <out>_nir.png)");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--report", cfg.report, "report output path");
    };

    auto* validate = app.add_subcommand("validate-filters", "perfect-reconstruction certificate for a bank");
    validate->add_option("--bank", cfg.bank)->capture_default_str();
    validate->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber)->capture_default_str();
    validate->add_option("--size", cfg.size)->capture_default_str();
    validate->add_option("--seed", cfg.seed);

    auto* roundtrip = app.add_subcommand("roundtrip", "decompose and reconstruct without changes");
    image_flags(roundtrip);
    auto* decompose_cmd = app.add_subcommand("decompose", "write a pyramid file");
    image_flags(decompose_cmd);
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "rebuild an image from a pyramid file");
    reconstruct_cmd->add_option("--bank", cfg.bank)->capture_default_str();
    reconstruct_cmd->add_option("--pyramid", cfg.pyramid)->required();
    reconstruct_cmd->add_option("--out", cfg.out)->required();
    reconstruct_cmd->add_option("--out-nir", cfg.out_nir);
    reconstruct_cmd->add_option("--depth", cfg.depth)->check(CLI::IsMember({8, 16}))->capture_default_str();

    auto* compress_cmd = app.add_subcommand("compress", "percentile-threshold compression");
    image_flags(compress_cmd);
    compress_cmd->add_option("--keep", cfg.keep, "fraction of coefficients kept")->capture_default_str();

    auto* enhance_cmd = app.add_subcommand("enhance", "detail-gain enhancement");
    image_flags(enhance_cmd);
    enhance_cmd->add_option("--gain", cfg.gain)->capture_default_str();
    enhance_cmd->add_option("--blur", cfg.blur, "Gaussian blur sigma applied first (0 = off)")->capture_default_str();
    enhance_cmd->add_option("--out-blurred", cfg.out_blurred);

    auto* edges_cmd = app.add_subcommand("edges", "edge detection by discarding the approximation");
    image_flags(edges_cmd);

    auto* denoise_cmd = app.add_subcommand("denoise", "wavelet shrinkage denoising");
    image_flags(denoise_cmd);
    denoise_cmd->add_option("--add-noise", cfg.add_noise, "add Gaussian noise of this sigma first");
    denoise_cmd->add_option("--sigma", cfg.sigma, "noise sigma for the VisuShrink threshold");
    denoise_cmd->add_option("--threshold", cfg.threshold, "explicit threshold (overrides VisuShrink)");
    denoise_cmd->add_option("--mode", cfg.mode)->check(CLI::IsMember({"soft", "hard"}))->capture_default_str();
    denoise_cmd->add_option("--out-noisy", cfg.out_noisy);

    auto* profile_cmd = app.add_subcommand("profile", "cumulative energy profiles (CSV)");
    image_flags(profile_cmd);

    auto* locations_cmd = app.add_subcommand("locations", "quaternionic vs channel-wise kept locations");
    image_flags(locations_cmd);
    locations_cmd->add_option("--keep", cfg.keep)->capture_default_str();
    locations_cmd->add_option("--channel-bank", cfg.channel_bank, "real bank for the channel runs")
        ->capture_default_str();

    auto* polar_cmd = app.add_subcommand("polar", "polar-form visualisation data (CSV)");
    polar_cmd->add_option("--rgb", cfg.rgb)->required();
    polar_cmd->add_option("--nir", cfg.nir);
    polar_cmd->add_option("--out", cfg.out)->required();

    auto* dr_cmd = app.add_subcommand("dr", "Douglas-Rachford feasibility solve");
    dr_cmd->add_option("--sets", cfg.sets)->required();
    dr_cmd->add_option("--x0", cfg.x0, "starting point, comma separated")->delimiter(',');
    dr_cmd->add_option("--tol", cfg.tol)->capture_default_str();
    dr_cmd->add_option("--max-iter", cfg.max_iter)->capture_default_str();
    dr_cmd->add_option("--out", cfg.out, "trace CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    const std::map<std::string, int (*)(const RunConfig&, std::ostream&, std::ostream&)> table{
        {"validate-filters", cmd_validate}, {"roundtrip", cmd_roundtrip}, {"decompose", cmd_decompose},
        {"reconstruct", cmd_reconstruct},   {"compress", cmd_compress},   {"enhance", cmd_enhance},
        {"edges", cmd_edges},               {"denoise", cmd_denoise},     {"profile", cmd_profile},
        {"locations", cmd_locations},       {"polar", cmd_polar},         {"dr", cmd_dr},
    };
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        return table.at(cfg.command)(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace qwave::cli
