#pragma once

// End-to-end pipeline: ingest -> classify -> bias tests -> FGP tests ->
// correlation dimension with reshuffle baselines -> equity -> distance
// discontinuity scan, packaged into a machine-readable report.

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "courtlab/court.hpp"
#include "courtlab/equity.hpp"
#include "courtlab/fractal.hpp"
#include "courtlab/shots.hpp"
#include "courtlab/stats.hpp"
#include "courtlab/synth.hpp"

namespace courtlab {

struct AnalysisOptions {
    double alpha = 0.05;        // bias and FGP tests
    double scan_alpha = 0.1;    // discontinuity scan
    bool scan_bonferroni = false;
    double bin_width_ft = 1.0;
    double scan_d_min = 0.0;
    double scan_d_max = 40.0;
    std::int64_t scan_min_bin_n = 50;
    int trials = 100;           // reshuffle trials per region
    std::uint64_t seed = 0;
    double unit_scale = 0.1;
    ShotFormat format = ShotFormat::Csv;
    D2Config d2;
};

struct RegionFractal {
    CorrelationFit observed;
    CorrelationCurve observed_curve;
    BaselineInterval baseline;
    double reduction = 0;
    int n_points = 0;  // shots inside the zone pair; also the reshuffle n
};

struct AnalysisReport {
    IngestReport ingest;
    std::map<ZoneLabel, ZoneCounts> zone_counts;
    std::map<Region, double> baselines;
    std::map<Region, ProportionTestResult> bias_tests;   // all four regions
    std::map<Region, TwoProportionResult> fgp_tests;     // in-FGP vs out-FGP
    std::map<Region, RegionFractal> fractal;             // three-point regions
    std::map<Region, EquityResult> equity;               // three-point regions
    std::optional<DiscontinuityScan> scan;
    std::optional<DistanceDensity> density;
    std::vector<ShotRecord> sample;                      // plot aid
    std::vector<std::string> warnings;                   // skipped analyses
};

// Analyze already-parsed shots. Regions with too little data degrade to a
// warning instead of aborting. Deterministic for fixed inputs and seed.
AnalysisReport analyze_shots(const std::vector<ShotRecord>& shots, const IngestReport& ingest,
                             const CourtModel& model, const AnalysisOptions& options);

// Parse from a stream, then analyze. Throws IngestError when no record is
// accepted.
AnalysisReport run_analysis(std::istream& input, const CourtModel& model,
                            const AnalysisOptions& options);

nlohmann::ordered_json report_to_json(const AnalysisReport& report, const CourtModel& model,
                                      const AnalysisOptions& options);

// report.json plus plot-data files (per-bin FGP, distance density,
// per-region log-log correlation curves, sampled shot list).
void write_report_files(const AnalysisReport& report, const CourtModel& model,
                        const AnalysisOptions& options, const std::filesystem::path& out_dir);

}  // namespace courtlab
