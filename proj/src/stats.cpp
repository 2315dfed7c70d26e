#include "courtlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "courtlab/errors.hpp"

namespace courtlab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double binom_log_pmf(std::int64_t k, std::int64_t n, double p0) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
           k * std::log(p0) + (n - k) * std::log1p(-p0);
}
}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

std::pair<double, double> wilson_interval(std::int64_t k, std::int64_t n, double z) {
    if (n <= 0) throw std::invalid_argument("wilson_interval: n must be positive");
    const double p = static_cast<double>(k) / static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double binom_test_two_sided(std::int64_t k, std::int64_t n, double p0) {
    if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("binom_test: bad counts");
    if (!(p0 > 0 && p0 < 1)) throw std::invalid_argument("binom_test: p0 must be in (0,1)");
    // Sum the probability of every outcome at most as likely as the observed
    // one (same convention as R's binom.test).
    const double log_obs = binom_log_pmf(k, n, p0) + 1e-7;
    double p = 0;
    for (std::int64_t i = 0; i <= n; ++i) {
        double lp = binom_log_pmf(i, n, p0);
        if (lp <= log_obs) p += std::exp(lp);
    }
    return std::min(1.0, p);
}

double two_proportion_p_value(std::int64_t k1, std::int64_t n1, std::int64_t k2,
                              std::int64_t n2) {
    if (n1 <= 0 || n2 <= 0) throw std::invalid_argument("two_proportion: empty sample");
    const double p1 = static_cast<double>(k1) / n1;
    const double p2 = static_cast<double>(k2) / n2;
    const double pooled = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
    const double var = pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2);
    if (var <= 0) return 1.0;  // all successes or all failures pooled
    const double z = (p1 - p2) / std::sqrt(var);
    return 2.0 * normal_cdf(-std::abs(z));
}

ProportionTestResult outer_fraction_test(const ZoneCounts& counts_in,
                                         const ZoneCounts& counts_out, double baseline) {
    const std::int64_t total = counts_in.attempts + counts_out.attempts;
    if (total == 0) throw EstimationError("outer_fraction_test: zero attempts");
    if (total < 30) throw EstimationError("outer_fraction_test: fewer than 30 attempts");
    if (!(baseline > 0 && baseline < 1))
        throw std::invalid_argument("outer_fraction_test: baseline must be in (0,1)");

    ProportionTestResult r;
    r.n = total;
    r.p_hat = static_cast<double>(counts_out.attempts) / static_cast<double>(total);
    std::tie(r.ci_lo, r.ci_hi) = wilson_interval(counts_out.attempts, total);
    r.baseline = baseline;
    r.p_value = binom_test_two_sided(counts_out.attempts, total, baseline);
    return r;
}

TwoProportionResult fgp_equality_test(const ZoneCounts& counts_a, const ZoneCounts& counts_b,
                                      double alpha) {
    if (counts_a.attempts <= 0 || counts_b.attempts <= 0)
        throw EstimationError("fgp_equality_test: zero attempts on one side");
    TwoProportionResult r;
    r.p1 = static_cast<double>(counts_a.made) / counts_a.attempts;
    r.p2 = static_cast<double>(counts_b.made) / counts_b.attempts;
    r.diff = r.p1 - r.p2;
    r.p_value = two_proportion_p_value(counts_a.made, counts_a.attempts, counts_b.made,
                                       counts_b.attempts);
    r.significant_at = alpha;
    r.significant = r.p_value < alpha;
    return r;
}

DiscontinuityScan discontinuity_scan(std::span<const ShotRecord> shots, double bin_width_ft,
                                     double d_min, double d_max, double alpha,
                                     std::int64_t min_bin_n, bool bonferroni) {
    if (!(bin_width_ft > 0)) throw std::invalid_argument("scan: bin width must be positive");
    if (!(d_min < d_max)) throw std::invalid_argument("scan: need d_min < d_max");

    const auto bins = static_cast<std::size_t>(std::ceil((d_max - d_min) / bin_width_ft));
    DiscontinuityScan scan;
    scan.alpha = alpha;
    scan.bonferroni = bonferroni;
    scan.min_bin_n = min_bin_n;
    scan.bin_edges_ft.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) scan.bin_edges_ft[i] = d_min + i * bin_width_ft;
    scan.n_per_bin.assign(bins, 0);
    std::vector<std::int64_t> made(bins, 0);

    std::int64_t in_range = 0;
    for (const auto& s : shots) {
        double d = s.shot_distance_ft;
        if (d < d_min || d >= scan.bin_edges_ft.back()) continue;
        auto b = static_cast<std::size_t>((d - d_min) / bin_width_ft);
        b = std::min(b, bins - 1);
        ++scan.n_per_bin[b];
        if (s.made) ++made[b];
        ++in_range;
    }
    if (in_range == 0) throw EstimationError("scan: no shots in range");

    scan.fgp_per_bin.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        scan.fgp_per_bin[i] =
            scan.n_per_bin[i] > 0 ? static_cast<double>(made[i]) / scan.n_per_bin[i] : kNaN;

    scan.adjacent_p_values.assign(bins > 0 ? bins - 1 : 0, kNaN);
    std::size_t comparisons = 0;
    for (std::size_t i = 0; i + 1 < bins; ++i) {
        if (scan.n_per_bin[i] < min_bin_n || scan.n_per_bin[i + 1] < min_bin_n) continue;
        scan.adjacent_p_values[i] = two_proportion_p_value(made[i], scan.n_per_bin[i],
                                                           made[i + 1], scan.n_per_bin[i + 1]);
        ++comparisons;
    }
    const double threshold = bonferroni && comparisons > 0 ? alpha / comparisons : alpha;
    for (std::size_t i = 0; i + 1 < bins; ++i) {
        double p = scan.adjacent_p_values[i];
        if (!std::isnan(p) && p < threshold)
            scan.flagged.push_back({scan.bin_edges_ft[i + 1],
                                    scan.fgp_per_bin[i + 1] - scan.fgp_per_bin[i], p});
    }
    return scan;
}

DistanceDensity distance_density(std::span<const ShotRecord> shots, double bin_width_ft) {
    if (shots.empty()) throw EstimationError("distance_density: no shots");
    if (!(bin_width_ft > 0)) throw std::invalid_argument("density: bin width must be positive");

    double d_lo = shots[0].shot_distance_ft, d_hi = d_lo;
    for (const auto& s : shots) {
        d_lo = std::min(d_lo, s.shot_distance_ft);
        d_hi = std::max(d_hi, s.shot_distance_ft);
    }
    const double start = std::floor(d_lo / bin_width_ft) * bin_width_ft;
    const auto bins = static_cast<std::size_t>((d_hi - start) / bin_width_ft) + 1;

    DistanceDensity h;
    h.bin_edges_ft.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) h.bin_edges_ft[i] = start + i * bin_width_ft;
    h.counts.assign(bins, 0);
    for (const auto& s : shots) {
        auto b = static_cast<std::size_t>((s.shot_distance_ft - start) / bin_width_ft);
        b = std::min(b, bins - 1);
        ++h.counts[b];
    }
    h.density.resize(bins);
    const double total = static_cast<double>(shots.size());
    for (std::size_t i = 0; i < bins; ++i)
        h.density[i] = static_cast<double>(h.counts[i]) / (total * bin_width_ft);
    return h;
}

std::map<ZoneLabel, ZoneCounts> aggregate_zone_counts(std::span<const ShotRecord> shots,
                                                      std::span<const ZoneSpec> zones) {
    std::map<ZoneLabel, ZoneCounts> counts;
    for (const auto& z : zones) counts[z.label] = ZoneCounts{z.label, 0, 0};
    for (const auto& s : shots) {
        auto label = classify_shot(s.x_ft, s.y_ft, zones);
        if (!label) continue;
        auto& c = counts[*label];
        ++c.attempts;
        if (s.made) ++c.made;
    }
    return counts;
}

}  // namespace courtlab
