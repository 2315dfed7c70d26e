#pragma once

// Proportion tests for spatial bias, FGP equality tests between paired
// zones, the FGP-vs-distance discontinuity scan, and shot-distance
// density summaries.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/shots.hpp"

namespace courtlab {

struct ZoneCounts {
    ZoneLabel label = ZoneLabel::LeftCornerIn;
    std::int64_t attempts = 0;
    std::int64_t made = 0;
};

struct ProportionTestResult {
    double p_hat = 0;          // observed outer fraction
    double ci_lo = 0, ci_hi = 0;  // 95% Wilson interval
    double baseline = 0;
    double p_value = 1;        // two-sided exact binomial vs baseline
    std::int64_t n = 0;
};

struct TwoProportionResult {
    double p1 = 0, p2 = 0;
    double diff = 0;           // p1 - p2
    double p_value = 1;        // pooled two-proportion z-test, two-sided
    double significant_at = 0.05;
    bool significant = false;
};

struct DiscontinuityScan {
    std::vector<double> bin_edges_ft;       // size bins+1
    std::vector<double> fgp_per_bin;        // NaN for empty bins
    std::vector<std::int64_t> n_per_bin;
    std::vector<double> adjacent_p_values;  // size bins-1, NaN when skipped
    struct Flag {
        double distance_ft;   // shared bin edge
        double delta_fgp;     // right-bin FGP minus left-bin FGP
        double p_value;
    };
    std::vector<Flag> flagged;
    double alpha = 0.1;
    bool bonferroni = false;
    std::int64_t min_bin_n = 50;
};

struct DistanceDensity {
    std::vector<double> bin_edges_ft;  // size bins+1
    std::vector<double> density;       // sum(density * width) == 1
    std::vector<std::int64_t> counts;
};

// Normal CDF and the 95% Wilson score interval for k successes of n.
double normal_cdf(double z);
std::pair<double, double> wilson_interval(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

// Two-sided exact binomial test of k successes in n trials against p0:
// the sum of all outcome probabilities no larger than the observed one.
double binom_test_two_sided(std::int64_t k, std::int64_t n, double p0);

// Pooled two-proportion z-test, two-sided.
double two_proportion_p_value(std::int64_t k1, std::int64_t n1, std::int64_t k2, std::int64_t n2);

// Spatial-bias test: is the fraction of attempts falling in the outer
// zone consistent with the geometric area baseline?
ProportionTestResult outer_fraction_test(const ZoneCounts& counts_in,
                                         const ZoneCounts& counts_out, double baseline);

// Field-goal-percentage equality between two zones.
TwoProportionResult fgp_equality_test(const ZoneCounts& counts_a, const ZoneCounts& counts_b,
                                      double alpha = 0.05);

// FGP per distance bin plus adjacent-bin tests. Bins with fewer than
// min_bin_n attempts are reported but never flagged. With bonferroni set,
// the flag threshold is alpha divided by the number of comparisons.
DiscontinuityScan discontinuity_scan(std::span<const ShotRecord> shots, double bin_width_ft,
                                     double d_min, double d_max, double alpha = 0.1,
                                     std::int64_t min_bin_n = 50, bool bonferroni = false);

// Normalized histogram of shot distances.
DistanceDensity distance_density(std::span<const ShotRecord> shots, double bin_width_ft);

// Attempts/made per zone; shots outside every zone are ignored.
std::map<ZoneLabel, ZoneCounts> aggregate_zone_counts(std::span<const ShotRecord> shots,
                                                      std::span<const ZoneSpec> zones);

}  // namespace courtlab
