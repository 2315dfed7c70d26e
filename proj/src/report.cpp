#include "courtlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "courtlab/errors.hpp"
#include "courtlab/rng.hpp"

namespace courtlab {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kSampleSize = 2000;

ordered_json json_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

ordered_json to_json(const ProportionTestResult& t, double alpha) {
    return {{"p_hat", t.p_hat},   {"ci_lo", t.ci_lo},     {"ci_hi", t.ci_hi},
            {"baseline", t.baseline}, {"p_value", t.p_value}, {"n", t.n},
            {"significant", t.p_value < alpha}};
}

ordered_json to_json(const TwoProportionResult& t) {
    return {{"fgp_in", t.p1},          {"fgp_out", t.p2},
            {"diff", t.diff},          {"p_value", t.p_value},
            {"significant_at", t.significant_at}, {"significant", t.significant}};
}

ordered_json to_json(const CorrelationFit& f) {
    return {{"d2", f.d2},
            {"r1", f.r1},
            {"r2", f.r2},
            {"slope_stderr", f.slope_stderr},
            {"r_squared", f.r_squared},
            {"n_points_used", f.n_points_used},
            {"n_zero_radii", f.n_zero_radii},
            {"exact_counting", f.exact_counting},
            {"pairs_used", f.pairs_used}};
}

ordered_json to_json(const EquityResult& e) {
    return {{"equity_in", e.equity_in},
            {"equity_out", e.equity_out},
            {"ratio_required", e.ratio_required},
            {"ratio_observed", e.ratio_observed},
            {"equity_gap", e.equity_gap}};
}

}  // namespace

AnalysisReport analyze_shots(const std::vector<ShotRecord>& shots, const IngestReport& ingest,
                             const CourtModel& model, const AnalysisOptions& options) {
    AnalysisReport report;
    report.ingest = ingest;
    const auto zones = make_study_zones(model);
    report.zone_counts = aggregate_zone_counts(shots, zones);

    auto warn = [&report](Region region, const char* what, const std::exception& e) {
        report.warnings.push_back(std::string(to_string(region)) + ": " + what + " skipped (" +
                                  e.what() + ")");
    };

    for (std::size_t i = 0; i < std::size(kAllRegions); ++i) {
        const Region region = kAllRegions[i];
        const ZoneSpec& zone_in = **find_zone(zones, region_in_label(region));
        const ZoneSpec& zone_out = **find_zone(zones, region_out_label(region));
        const ZoneCounts& in = report.zone_counts.at(zone_in.label);
        const ZoneCounts& out = report.zone_counts.at(zone_out.label);
        report.baselines[region] = baseline_outer_fraction(zone_in, zone_out);

        try {
            report.bias_tests[region] = outer_fraction_test(in, out, report.baselines[region]);
        } catch (const EstimationError& e) {
            warn(region, "bias test", e);
        }
        try {
            report.fgp_tests[region] = fgp_equality_test(in, out, options.alpha);
        } catch (const EstimationError& e) {
            warn(region, "FGP test", e);
        }
        if (region == Region::Control) continue;

        try {
            report.equity[region] =
                zone_equity_report(in, out, false, region_out_is_three(region));
        } catch (const EstimationError& e) {
            warn(region, "equity", e);
        }

        PointSet pts;
        for (const auto& s : shots)
            if (zone_in.contains(s.x_ft, s.y_ft) || zone_out.contains(s.x_ft, s.y_ft))
                pts.push_back({s.x_ft, s.y_ft});
        if (pts.size() < 100) {
            report.warnings.push_back(std::string(to_string(region)) +
                                      ": fractal analysis skipped (fewer than 100 shots in band)");
            continue;
        }
        try {
            RegionFractal rf;
            rf.n_points = static_cast<int>(pts.size());
            D2Config cfg = options.d2;
            cfg.seed = derive_seed(options.seed, 100 + i);
            auto range = zone_scale_range(zone_in, zone_out);
            if (range) {
                rf.observed = estimate_d2(pts, range->first, range->second, cfg.n_radii, cfg);
            } else {
                rf.observed = estimate_d2_auto(pts, cfg);
            }
            std::vector<double> radii(cfg.n_radii);
            for (int k = 0; k < cfg.n_radii; ++k)
                radii[k] = rf.observed.r1 * std::pow(rf.observed.r2 / rf.observed.r1,
                                                     static_cast<double>(k) / (cfg.n_radii - 1));
            rf.observed_curve = correlation_integral(pts, radii, cfg);
            rf.baseline = reshuffle_baseline(zone_in, zone_out, rf.n_points, options.trials,
                                             derive_seed(options.seed, 200 + i), cfg);
            rf.reduction = dimension_reduction(rf.observed, rf.baseline);
            report.fractal[region] = std::move(rf);
        } catch (const std::exception& e) {
            warn(region, "fractal analysis", e);
        }
    }

    try {
        report.scan = discontinuity_scan(shots, options.bin_width_ft, options.scan_d_min,
                                         options.scan_d_max, options.scan_alpha,
                                         options.scan_min_bin_n, options.scan_bonferroni);
    } catch (const std::exception& e) {
        report.warnings.push_back(std::string("discontinuity scan skipped (") + e.what() + ")");
    }
    try {
        report.density = distance_density(shots, options.bin_width_ft);
    } catch (const std::exception& e) {
        report.warnings.push_back(std::string("distance density skipped (") + e.what() + ")");
    }

    if (shots.size() <= kSampleSize) {
        report.sample = shots;
    } else {
        report.sample.reserve(kSampleSize);
        std::mt19937_64 rng(derive_seed(options.seed, 0xFACEULL));
        std::sample(shots.begin(), shots.end(), std::back_inserter(report.sample), kSampleSize,
                    rng);
    }
    return report;
}

AnalysisReport run_analysis(std::istream& input, const CourtModel& model,
                            const AnalysisOptions& options) {
    IngestResult ingest = parse_shots(input, options.format, options.unit_scale);
    if (ingest.shots.empty()) throw IngestError("no accepted shot records in input");
    return analyze_shots(ingest.shots, ingest.report, model, options);
}

nlohmann::ordered_json report_to_json(const AnalysisReport& report, const CourtModel& model,
                                      const AnalysisOptions& options) {
    ordered_json j;
    j["config"] = {{"court",
                    {{"corner_dist_ft", model.corner_dist_ft},
                     {"crest_dist_ft", model.crest_dist_ft},
                     {"court_half_width_ft", model.court_half_width_ft},
                     {"baseline_y_ft", model.baseline_y_ft},
                     {"band_width_ft", model.band_width_ft},
                     {"corner_break_y_ft", model.corner_break_y()}}},
                   {"alpha", options.alpha},
                   {"scan_alpha", options.scan_alpha},
                   {"scan_bonferroni", options.scan_bonferroni},
                   {"bin_width_ft", options.bin_width_ft},
                   {"scan_d_min", options.scan_d_min},
                   {"scan_d_max", options.scan_d_max},
                   {"scan_min_bin_n", options.scan_min_bin_n},
                   {"trials", options.trials},
                   {"seed", options.seed},
                   {"unit_scale", options.unit_scale},
                   {"d2",
                    {{"exact_pair_cap", options.d2.exact_pair_cap},
                     {"subsample_pairs", options.d2.subsample_pairs},
                     {"p_lo", options.d2.p_lo},
                     {"p_hi", options.d2.p_hi},
                     {"n_radii", options.d2.n_radii}}}};

    j["ingest"] = {{"total_rows", report.ingest.total_rows},
                   {"accepted", report.ingest.accepted},
                   {"rejected", report.ingest.rejected},
                   {"rejection_reasons", report.ingest.rejection_reasons}};

    ordered_json zc;
    for (const auto& [label, counts] : report.zone_counts)
        zc[to_string(label)] = {{"attempts", counts.attempts}, {"made", counts.made}};
    j["zone_counts"] = zc;

    ordered_json baselines, bias, fgp, fractal, equity;
    for (Region region : kAllRegions) {
        const char* name = to_string(region);
        baselines[name] = report.baselines.at(region);
        bias[name] = report.bias_tests.contains(region)
                         ? to_json(report.bias_tests.at(region), options.alpha)
                         : ordered_json(nullptr);
        fgp[name] = report.fgp_tests.contains(region) ? to_json(report.fgp_tests.at(region))
                                                      : ordered_json(nullptr);
        if (region == Region::Control) continue;
        if (report.fractal.contains(region)) {
            const RegionFractal& rf = report.fractal.at(region);
            fractal[name] = {{"observed", to_json(rf.observed)},
                             {"baseline",
                              {{"lo", rf.baseline.lo},
                               {"hi", rf.baseline.hi},
                               {"trials", rf.baseline.trials}}},
                             {"reduction", rf.reduction},
                             {"n_points", rf.n_points}};
        } else {
            fractal[name] = nullptr;
        }
        equity[name] = report.equity.contains(region) ? to_json(report.equity.at(region))
                                                      : ordered_json(nullptr);
    }
    j["baselines"] = baselines;
    j["bias_tests"] = bias;
    j["fgp_tests"] = fgp;
    j["fractal"] = fractal;
    j["equity"] = equity;

    if (report.scan) {
        const auto& s = *report.scan;
        ordered_json flags = ordered_json::array();
        for (const auto& f : s.flagged)
            flags.push_back(
                {{"distance_ft", f.distance_ft}, {"delta_fgp", f.delta_fgp}, {"p_value", f.p_value}});
        ordered_json fgp_bins = ordered_json::array();
        for (double v : s.fgp_per_bin) fgp_bins.push_back(json_or_null(v));
        ordered_json pvals = ordered_json::array();
        for (double v : s.adjacent_p_values) pvals.push_back(json_or_null(v));
        j["discontinuity_scan"] = {{"alpha", s.alpha},
                                   {"bonferroni", s.bonferroni},
                                   {"min_bin_n", s.min_bin_n},
                                   {"bin_edges_ft", s.bin_edges_ft},
                                   {"n_per_bin", s.n_per_bin},
                                   {"fgp_per_bin", fgp_bins},
                                   {"adjacent_p_values", pvals},
                                   {"flagged", flags}};
    } else {
        j["discontinuity_scan"] = nullptr;
    }

    if (report.density) {
        j["distance_density"] = {{"bin_edges_ft", report.density->bin_edges_ft},
                                 {"density", report.density->density},
                                 {"counts", report.density->counts}};
    } else {
        j["distance_density"] = nullptr;
    }

    j["warnings"] = report.warnings;
    return j;
}

void write_report_files(const AnalysisReport& report, const CourtModel& model,
                        const AnalysisOptions& options, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream out(out_dir / "report.json");
        if (!out) throw IngestError("cannot write " + (out_dir / "report.json").string());
        out << report_to_json(report, model, options).dump(2) << '\n';
    }

    if (report.scan) {
        std::ofstream out(out_dir / "fgp_by_distance.tsv");
        const auto& s = *report.scan;
        out << "bin_lo_ft\tbin_hi_ft\tn\tfgp\tp_value_vs_next\n";
        for (std::size_t i = 0; i + 1 < s.bin_edges_ft.size(); ++i) {
            out << s.bin_edges_ft[i] << '\t' << s.bin_edges_ft[i + 1] << '\t' << s.n_per_bin[i]
                << '\t' << s.fgp_per_bin[i] << '\t'
                << (i < s.adjacent_p_values.size() ? s.adjacent_p_values[i]
                                                   : std::numeric_limits<double>::quiet_NaN())
                << '\n';
        }
    }

    if (report.density) {
        std::ofstream out(out_dir / "distance_density.tsv");
        out << "bin_lo_ft\tbin_hi_ft\tdensity\tcount\n";
        for (std::size_t i = 0; i < report.density->density.size(); ++i)
            out << report.density->bin_edges_ft[i] << '\t' << report.density->bin_edges_ft[i + 1]
                << '\t' << report.density->density[i] << '\t' << report.density->counts[i] << '\n';
    }

    for (const auto& [region, rf] : report.fractal) {
        std::ofstream out(out_dir / (std::string("corr_") + to_string(region) + ".tsv"));
        out << "r_ft\tc_of_r\n";
        for (std::size_t i = 0; i < rf.observed_curve.radii.size(); ++i)
            out << rf.observed_curve.radii[i] << '\t' << rf.observed_curve.c_of_r[i] << '\n';
    }

    {
        std::ofstream out(out_dir / "shot_sample.tsv");
        out << "x_ft\ty_ft\tmade\tshot_type\n";
        for (const auto& s : report.sample)
            out << s.x_ft << '\t' << s.y_ft << '\t' << (s.made ? 1 : 0) << '\t'
                << (s.shot_type == ShotType::ThreePoint ? 3 : 2) << '\n';
    }
}

}  // namespace courtlab
