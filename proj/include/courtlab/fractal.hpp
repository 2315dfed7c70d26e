#pragma once

// Correlation-dimension estimation on 2D point sets: the correlation
// integral C(r) = fraction of unordered point pairs at distance <= r,
// the log-log slope fit giving D2, and Monte-Carlo reshuffle baselines
// that redistribute the same number of points uniformly over a zone.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "courtlab/court.hpp"

namespace courtlab {

struct Vec2 {
    double x = 0, y = 0;
};

using PointSet = std::vector<Vec2>;

struct CorrelationCurve {
    std::vector<double> radii;              // ascending
    std::vector<double> c_of_r;             // nondecreasing, in [0,1]
    std::vector<std::uint64_t> pair_counts; // cumulative pairs per radius
    bool exact = true;                      // false when pair-subsampled
    std::uint64_t pairs_used = 0;           // n*(n-1)/2 or the sample size
};

struct CorrelationFit {
    double d2 = 0;            // OLS slope of log C(r) vs log r over [r1, r2]
    double r1 = 0, r2 = 0;
    double slope_stderr = 0;
    double r_squared = 0;
    int n_points_used = 0;    // (r, C) pairs entering the fit
    int n_zero_radii = 0;     // radii dropped because C(r) == 0
    bool exact_counting = true;
    std::uint64_t pairs_used = 0;
};

struct BaselineInterval {
    double lo = 0, hi = 0;            // 2.5th / 97.5th percentile of per_trial_d2
    int trials = 0;                   // successful trials
    std::vector<double> per_trial_d2;
};

struct D2Config {
    std::size_t exact_pair_cap = 20000;      // above this n, subsample pairs
    std::uint64_t subsample_pairs = 40'000'000;  // keeps seed scatter below the fit error
    std::uint64_t range_sample_pairs = 2'000'000;  // for percentile estimation
    double p_lo = 0.2;   // auto-range percentiles of the pair-distance sample
    double p_hi = 5.0;
    int n_radii = 24;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency
};

// Cumulative pair counts per radius. The grid counter buckets points into
// cells of the largest radius and scans neighbor cells; the brute-force
// counter is the O(n^2) oracle. Both return identical counts.
std::vector<std::uint64_t> pair_counts_grid(const PointSet& points,
                                            std::span<const double> radii);
std::vector<std::uint64_t> pair_counts_brute(const PointSet& points,
                                             std::span<const double> radii);

// C(r) at each radius. Exact for n <= cfg.exact_pair_cap; above the cap,
// estimated from cfg.subsample_pairs uniformly sampled pairs (reported via
// exact/pairs_used). Radii must be ascending and positive; n >= 2.
CorrelationCurve correlation_integral(const PointSet& points, std::vector<double> radii,
                                      const D2Config& cfg = {});

// Scale range from pair-distance percentiles [p_lo, p_hi]. Degenerate
// ranges widen to [smallest nonzero distance, median]; if that is still
// empty the set has no usable scales.
std::pair<double, double> auto_scale_range(const PointSet& points, double p_lo,
                                           double p_hi, const D2Config& cfg = {});

// OLS slope of log C vs log r over n_radii log-spaced radii in [r1, r2].
// Radii with C(r) == 0 are dropped; fewer than 3 usable radii is an error.
CorrelationFit estimate_d2(const PointSet& points, double r1, double r2, int n_radii,
                           const D2Config& cfg = {});

// estimate_d2 over the automatic percentile range (cfg.p_lo, cfg.p_hi).
CorrelationFit estimate_d2_auto(const PointSet& points, const D2Config& cfg = {});

// Characteristic fit window of a uniform in/out band pair, from the zone
// geometry. Straight bands are elongated strips and are measured in the
// regime where the strip reads as a line (scales from the strip width up
// to a few widths); arc bands are measured below their radial width,
// where the band reads as a patch of surface. Returns nullopt when the
// union is not elongated (aspect < 2.25), in which case callers fall back
// to the generic percentile range.
std::optional<std::pair<double, double>> zone_scale_range(const ZoneSpec& zone_in,
                                                          const ZoneSpec& zone_out);

// Uniform point inside a zone.
Vec2 sample_zone_point(const ZoneSpec& zone, std::mt19937_64& rng);

// Monte-Carlo dimensionality baseline: each trial draws n points uniformly
// over zone_in + zone_out (area-weighted), estimates D2 over the zone's
// characteristic window, and the 95% percentile interval of the per-trial
// estimates is returned. Deterministic for a given seed regardless of the
// number of worker threads. More than 10% failed trials is an error.
BaselineInterval reshuffle_baseline(const ZoneSpec& zone_in, const ZoneSpec& zone_out,
                                    int n, int trials, std::uint64_t seed,
                                    const D2Config& cfg = {});

// 1 - observed.d2 / midpoint(baseline).
double dimension_reduction(const CorrelationFit& observed, const BaselineInterval& baseline);

}  // namespace courtlab
