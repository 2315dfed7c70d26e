// courtlab CLI: analyze a shot chart, generate synthetic charts, or run a
// standalone correlation-dimension estimate on a point file.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "courtlab/court.hpp"
#include "courtlab/errors.hpp"
#include "courtlab/fractal.hpp"
#include "courtlab/report.hpp"
#include "courtlab/shots.hpp"
#include "courtlab/synth.hpp"

namespace {

using namespace courtlab;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitConfigError = 2;

CourtModel load_court(const std::string& config_path) {
    if (config_path.empty()) {
        CourtModel model;
        model.validate();
        return model;
    }
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    return parse_court_config(in);
}

PointSet load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open point file: " + path);
    PointSet pts;
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',' || c == '\t') c = ' ';
        std::istringstream row(line);
        double x, y;
        if (row >> x >> y) pts.push_back({x, y});
    }
    if (pts.size() < 2) throw IngestError("point file has fewer than 2 parsable rows");
    return pts;
}

int cmd_analyze(const std::string& input, const std::string& format,
                const std::string& config_path, const std::string& out_dir,
                const AnalysisOptions& base) {
    AnalysisOptions options = base;
    options.format = format == "jsonl" ? ShotFormat::Jsonl : ShotFormat::Csv;
    options.d2.seed = options.seed;
    CourtModel model = load_court(config_path);

    std::ifstream in(input);
    if (!in) throw IngestError("cannot open input file: " + input);
    AnalysisReport report = run_analysis(in, model, options);
    write_report_files(report, model, options, out_dir);

    std::printf("accepted %zu / %zu rows (%zu rejected)\n", report.ingest.accepted,
                report.ingest.total_rows, report.ingest.rejected);
    for (Region region : kAllRegions) {
        std::printf("%-12s baseline %.4f", to_string(region), report.baselines.at(region));
        if (report.bias_tests.contains(region)) {
            const auto& t = report.bias_tests.at(region);
            std::printf("  outer %.4f  p %.3g%s", t.p_hat, t.p_value,
                        t.p_value < options.alpha ? " *" : "");
        }
        if (report.fractal.contains(region)) {
            const auto& f = report.fractal.at(region);
            std::printf("  d2 %.3f vs [%.3f, %.3f]  reduction %.1f%%", f.observed.d2,
                        f.baseline.lo, f.baseline.hi, 100.0 * f.reduction);
        }
        std::printf("\n");
    }
    if (report.scan) {
        for (const auto& f : report.scan->flagged)
            std::printf("FGP discontinuity at %.1f ft: delta %+.3f, p %.3g\n", f.distance_ft,
                        f.delta_fgp, f.p_value);
        if (report.scan->flagged.empty()) std::printf("no FGP discontinuity flagged\n");
    }
    for (const auto& w : report.warnings) std::printf("warning: %s\n", w.c_str());
    std::printf("report written to %s\n", out_dir.c_str());
    return kExitOk;
}

int cmd_synth(const std::string& spec_path, const std::string& out_path,
              const std::string& config_path, std::uint64_t seed, bool seed_given) {
    std::ifstream spec_in(spec_path);
    if (!spec_in) throw ConfigError("cannot open spec file: " + spec_path);
    SyntheticSpec spec = load_synthetic_spec(spec_in);
    if (seed_given) spec.seed = seed;
    CourtModel model = load_court(config_path);

    auto shots = generate_synthetic(spec, model);
    std::ofstream out(out_path);
    if (!out) throw IngestError("cannot write output file: " + out_path);
    write_canonical_csv(shots, out);
    std::printf("wrote %zu shots to %s\n", shots.size(), out_path.c_str());
    return kExitOk;
}

int cmd_d2(const std::string& input, double r1, double r2, bool auto_range, int n_radii,
           double p_lo, double p_hi, std::uint64_t seed) {
    PointSet pts = load_points(input);
    D2Config cfg;
    cfg.n_radii = n_radii;
    cfg.p_lo = p_lo;
    cfg.p_hi = p_hi;
    cfg.seed = seed;

    CorrelationFit fit;
    if (auto_range) {
        fit = estimate_d2_auto(pts, cfg);
    } else {
        if (!(r1 > 0 && r1 < r2))
            throw ConfigError("need 0 < --r1 < --r2 (or pass --auto-range)");
        fit = estimate_d2(pts, r1, r2, n_radii, cfg);
    }
    std::printf("n_points      %zu\n", pts.size());
    std::printf("r1            %.6g\n", fit.r1);
    std::printf("r2            %.6g\n", fit.r2);
    std::printf("d2            %.6g\n", fit.d2);
    std::printf("slope_stderr  %.6g\n", fit.slope_stderr);
    std::printf("r_squared     %.6g\n", fit.r_squared);
    std::printf("fit_radii     %d (%d empty)\n", fit.n_points_used, fit.n_zero_radii);
    std::printf("pairs         %llu (%s)\n", static_cast<unsigned long long>(fit.pairs_used),
                fit.exact_counting ? "exact" : "subsampled");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shot-chart spatial statistics: three-point-line bias, correlation "
                 "dimension, court equity"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "run the full analysis pipeline");
    std::string input, format = "csv", config_path, out_dir = "courtlab_out";
    AnalysisOptions options;
    analyze->add_option("--input", input, "shot chart file")->required();
    analyze->add_option("--format", format, "csv|jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    analyze->add_option("--config", config_path, "court constants (key=value)");
    analyze->add_option("--seed", options.seed, "random seed");
    analyze->add_option("--out", out_dir, "output directory");
    analyze->add_option("--alpha", options.alpha, "bias/FGP test level");
    analyze->add_option("--scan-alpha", options.scan_alpha, "discontinuity scan level");
    analyze->add_flag("--scan-bonferroni", options.scan_bonferroni,
                      "Bonferroni-correct the scan");
    analyze->add_option("--bin-width", options.bin_width_ft, "distance bin width (ft)");
    analyze->add_option("--scan-min", options.scan_d_min, "scan range start (ft)");
    analyze->add_option("--scan-max", options.scan_d_max, "scan range end (ft)");
    analyze->add_option("--trials", options.trials, "reshuffle trials per region");
    analyze->add_option("--unit-scale", options.unit_scale, "source location units -> feet");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic shot chart");
    std::string spec_path, synth_out = "synthetic.csv", synth_config;
    std::uint64_t synth_seed = 0;
    synth->add_option("--spec", spec_path, "synthetic spec (JSON)")->required();
    synth->add_option("--out", synth_out, "output CSV path");
    synth->add_option("--config", synth_config, "court constants (key=value)");
    auto* seed_opt = synth->add_option("--seed", synth_seed, "override the spec seed");

    // d2
    auto* d2 = app.add_subcommand("d2", "correlation dimension of a point file");
    std::string d2_input;
    double r1 = 0, r2 = 0, p_lo = 0.2, p_hi = 5.0;
    bool auto_range = false;
    int n_radii = 24;
    std::uint64_t d2_seed = 0;
    d2->add_option("--input", d2_input, "point file: x y per line")->required();
    d2->add_option("--r1", r1, "lower fit radius (ft)");
    d2->add_option("--r2", r2, "upper fit radius (ft)");
    d2->add_flag("--auto-range", auto_range, "pick the range from distance percentiles");
    d2->add_option("--n-radii", n_radii, "log-spaced radii in the fit");
    d2->add_option("--p-lo", p_lo, "auto-range lower percentile");
    d2->add_option("--p-hi", p_hi, "auto-range upper percentile");
    d2->add_option("--seed", d2_seed, "random seed (pair subsampling)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(input, format, config_path, out_dir, options);
        if (synth->parsed())
            return cmd_synth(spec_path, synth_out, synth_config, synth_seed, !seed_opt->empty());
        if (d2->parsed())
            return cmd_d2(d2_input, r1, r2, auto_range, n_radii, p_lo, p_hi, d2_seed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
