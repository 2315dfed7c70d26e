#include "courtlab/fractal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>

#include "courtlab/errors.hpp"
#include "courtlab/rng.hpp"

namespace courtlab {

namespace {

void validate_radii(std::span<const double> radii) {
    if (radii.empty()) throw std::invalid_argument("radii must be nonempty");
    double prev = 0;
    for (double r : radii) {
        if (!(r > prev)) throw std::invalid_argument("radii must be positive and ascending");
        prev = r;
    }
}

// Histogram of squared distances against ascending radii^2, then prefix sum.
inline void bin_distance(double d2, std::span<const double> radii2,
                         std::vector<std::uint64_t>& bins) {
    auto it = std::lower_bound(radii2.begin(), radii2.end(), d2);
    if (it != radii2.end()) ++bins[static_cast<std::size_t>(it - radii2.begin())];
}

std::vector<double> squared(std::span<const double> radii) {
    std::vector<double> r2(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) r2[i] = radii[i] * radii[i];
    return r2;
}

void prefix_sum(std::vector<std::uint64_t>& bins) {
    for (std::size_t i = 1; i < bins.size(); ++i) bins[i] += bins[i - 1];
}

double percentile_sorted(std::span<const double> sorted, double p) {
    double idx = (p / 100.0) * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(idx);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = idx - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::vector<std::uint64_t> pair_counts_brute(const PointSet& points,
                                             std::span<const double> radii) {
    validate_radii(radii);
    const auto radii2 = squared(radii);
    std::vector<std::uint64_t> bins(radii.size(), 0);
    const std::size_t n = points.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = points[i].x - points[j].x;
            double dy = points[i].y - points[j].y;
            bin_distance(dx * dx + dy * dy, radii2, bins);
        }
    }
    prefix_sum(bins);
    return bins;
}

std::vector<std::uint64_t> pair_counts_grid(const PointSet& points,
                                            std::span<const double> radii) {
    validate_radii(radii);
    const std::size_t n = points.size();
    if (n < 2) return std::vector<std::uint64_t>(radii.size(), 0);

    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const auto& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double h = radii.back();
    const auto nx = static_cast<std::size_t>((max_x - min_x) / h) + 1;
    const auto ny = static_cast<std::size_t>((max_y - min_y) / h) + 1;
    if (nx > (1u << 21) || ny > (1u << 21) || nx * ny > (1u << 22))
        return pair_counts_brute(points, radii);  // grid would not pay off

    // Cell lists: head[cell] -> first point, next[i] -> next point in cell.
    std::vector<std::int32_t> head(nx * ny, -1);
    std::vector<std::int32_t> next(n, -1);
    std::vector<std::uint32_t> cx(n), cy(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ix = static_cast<std::uint32_t>((points[i].x - min_x) / h);
        auto iy = static_cast<std::uint32_t>((points[i].y - min_y) / h);
        ix = std::min<std::uint32_t>(ix, nx - 1);
        iy = std::min<std::uint32_t>(iy, ny - 1);
        cx[i] = ix;
        cy[i] = iy;
        std::size_t cell = iy * nx + ix;
        next[i] = head[cell];
        head[cell] = static_cast<std::int32_t>(i);
    }

    const auto radii2 = squared(radii);
    std::vector<std::uint64_t> bins(radii.size(), 0);
    auto scan_pair = [&](std::int32_t i, std::int32_t j) {
        double dx = points[i].x - points[j].x;
        double dy = points[i].y - points[j].y;
        bin_distance(dx * dx + dy * dy, radii2, bins);
    };
    // Forward neighbor offsets visit each unordered cell pair once.
    constexpr int kOff[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            std::int32_t a = head[iy * nx + ix];
            if (a < 0) continue;
            for (std::int32_t i = a; i >= 0; i = next[i])
                for (std::int32_t j = next[i]; j >= 0; j = next[j]) scan_pair(i, j);
            for (const auto& off : kOff) {
                auto jx = static_cast<std::int64_t>(ix) + off[0];
                auto jy = static_cast<std::int64_t>(iy) + off[1];
                if (jx < 0 || jy < 0 || jx >= static_cast<std::int64_t>(nx) ||
                    jy >= static_cast<std::int64_t>(ny))
                    continue;
                std::int32_t b = head[static_cast<std::size_t>(jy) * nx + jx];
                if (b < 0) continue;
                for (std::int32_t i = a; i >= 0; i = next[i])
                    for (std::int32_t j = b; j >= 0; j = next[j]) scan_pair(i, j);
            }
        }
    }
    prefix_sum(bins);
    return bins;
}

CorrelationCurve correlation_integral(const PointSet& points, std::vector<double> radii,
                                      const D2Config& cfg) {
    validate_radii(radii);
    const std::size_t n = points.size();
    if (n < 2) throw EstimationError("point_set_too_small");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("points must have finite coordinates");

    CorrelationCurve curve;
    curve.radii = std::move(radii);
    if (n <= cfg.exact_pair_cap) {
        curve.pair_counts = pair_counts_grid(points, curve.radii);
        curve.exact = true;
        curve.pairs_used = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    } else {
        const auto radii2 = squared(curve.radii);
        std::vector<std::uint64_t> bins(curve.radii.size(), 0);
        std::mt19937_64 rng(derive_seed(cfg.seed, 0xC0117A1UL));
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t s = 0; s < cfg.subsample_pairs; ++s) {
            std::size_t i = pick(rng);
            std::size_t j = pick(rng);
            while (j == i) j = pick(rng);
            double dx = points[i].x - points[j].x;
            double dy = points[i].y - points[j].y;
            bin_distance(dx * dx + dy * dy, radii2, bins);
        }
        prefix_sum(bins);
        curve.pair_counts = std::move(bins);
        curve.exact = false;
        curve.pairs_used = cfg.subsample_pairs;
    }
    curve.c_of_r.resize(curve.radii.size());
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
        curve.c_of_r[i] =
            static_cast<double>(curve.pair_counts[i]) / static_cast<double>(curve.pairs_used);
    return curve;
}

std::pair<double, double> auto_scale_range(const PointSet& points, double p_lo, double p_hi,
                                           const D2Config& cfg) {
    const std::size_t n = points.size();
    if (n < 2) throw EstimationError("point_set_too_small");
    if (!(0 <= p_lo && p_lo < p_hi && p_hi <= 100))
        throw std::invalid_argument("percentiles must satisfy 0 <= p_lo < p_hi <= 100");

    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::vector<double> dists;
    if (total <= cfg.range_sample_pairs) {
        dists.reserve(total);
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                dists.push_back(std::hypot(points[i].x - points[j].x, points[i].y - points[j].y));
    } else {
        dists.reserve(cfg.range_sample_pairs);
        std::mt19937_64 rng(derive_seed(cfg.seed, 0x5CA1EUL));
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t s = 0; s < cfg.range_sample_pairs; ++s) {
            std::size_t i = pick(rng);
            std::size_t j = pick(rng);
            while (j == i) j = pick(rng);
            dists.push_back(std::hypot(points[i].x - points[j].x, points[i].y - points[j].y));
        }
    }
    std::sort(dists.begin(), dists.end());

    double r1 = percentile_sorted(dists, p_lo);
    double r2 = percentile_sorted(dists, p_hi);
    if (r1 > 0 && r1 < r2) return {r1, r2};

    // Widen: smallest nonzero distance up to the median.
    auto nz = std::upper_bound(dists.begin(), dists.end(), 0.0);
    if (nz == dists.end()) throw EstimationError("degenerate_point_set");
    r1 = *nz;
    r2 = percentile_sorted(dists, 50.0);
    if (!(r1 < r2)) throw EstimationError("insufficient_scaling_range");
    return {r1, r2};
}

CorrelationFit estimate_d2(const PointSet& points, double r1, double r2, int n_radii,
                           const D2Config& cfg) {
    if (!(r1 > 0 && r1 < r2)) throw std::invalid_argument("need 0 < r1 < r2");
    if (n_radii < 5) throw std::invalid_argument("need n_radii >= 5");

    std::vector<double> radii(n_radii);
    const double log_lo = std::log(r1), log_hi = std::log(r2);
    for (int i = 0; i < n_radii; ++i)
        radii[i] = std::exp(log_lo + (log_hi - log_lo) * i / (n_radii - 1));
    radii.front() = r1;
    radii.back() = r2;

    CorrelationCurve curve = correlation_integral(points, std::move(radii), cfg);

    std::vector<double> xs, ys;
    xs.reserve(curve.radii.size());
    int zero_radii = 0;
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        if (curve.c_of_r[i] <= 0) {
            ++zero_radii;
            continue;
        }
        xs.push_back(std::log(curve.radii[i]));
        ys.push_back(std::log(curve.c_of_r[i]));
    }
    const auto m = xs.size();
    if (m < 3) throw EstimationError("insufficient_scaling_range");

    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double sse = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double resid = ys[i] - my - slope * (xs[i] - mx);
        sse += resid * resid;
    }

    CorrelationFit fit;
    fit.d2 = slope;
    fit.r1 = r1;
    fit.r2 = r2;
    fit.slope_stderr = m > 2 ? std::sqrt(sse / static_cast<double>(m - 2) / sxx) : 0.0;
    fit.r_squared = syy > 0 ? 1.0 - sse / syy : 1.0;
    fit.n_points_used = static_cast<int>(m);
    fit.n_zero_radii = zero_radii;
    fit.exact_counting = curve.exact;
    fit.pairs_used = curve.pairs_used;
    return fit;
}

CorrelationFit estimate_d2_auto(const PointSet& points, const D2Config& cfg) {
    auto [r1, r2] = auto_scale_range(points, cfg.p_lo, cfg.p_hi, cfg);
    return estimate_d2(points, r1, r2, cfg.n_radii, cfg);
}

std::optional<std::pair<double, double>> zone_scale_range(const ZoneSpec& zone_in,
                                                          const ZoneSpec& zone_out) {
    if (zone_in.kind != zone_out.kind)
        throw std::invalid_argument("zone_scale_range: mismatched zone kinds");
    if (zone_in.kind == ZoneSpec::Kind::StraightBand) {
        const double span_x = std::max(zone_in.x_hi, zone_out.x_hi) -
                              std::min(zone_in.x_lo, zone_out.x_lo);
        const double span_y = std::max(zone_in.y_hi, zone_out.y_hi) -
                              std::min(zone_in.y_lo, zone_out.y_lo);
        const double w = std::min(span_x, span_y);
        const double len = std::max(span_x, span_y);
        if (len < 2.25 * w) return std::nullopt;
        return std::make_pair(w, std::min(3.0 * w, 0.45 * len));
    }
    const double r_lo = std::min(zone_in.r_lo, zone_out.r_lo);
    const double r_hi = std::max(zone_in.r_hi, zone_out.r_hi);
    const double w = r_hi - r_lo;
    const double span = std::max(zone_in.theta_hi, zone_out.theta_hi) -
                        std::min(zone_in.theta_lo, zone_out.theta_lo);
    const double arc = span * 0.5 * (r_lo + r_hi);
    if (arc < 2.25 * w) return std::nullopt;
    return std::make_pair(0.25 * w, 0.6 * w);
}

Vec2 sample_zone_point(const ZoneSpec& zone, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (zone.kind == ZoneSpec::Kind::StraightBand) {
        double x = zone.x_lo + unit(rng) * (zone.x_hi - zone.x_lo);
        double y = zone.y_lo + unit(rng) * (zone.y_hi - zone.y_lo);
        return {x, y};
    }
    double theta = zone.theta_lo + unit(rng) * (zone.theta_hi - zone.theta_lo);
    double r2_lo = zone.r_lo * zone.r_lo, r2_hi = zone.r_hi * zone.r_hi;
    double r = std::sqrt(r2_lo + unit(rng) * (r2_hi - r2_lo));
    return {r * std::cos(theta), r * std::sin(theta)};
}

BaselineInterval reshuffle_baseline(const ZoneSpec& zone_in, const ZoneSpec& zone_out,
                                    int n, int trials, std::uint64_t seed,
                                    const D2Config& cfg) {
    if (n < 100) throw std::invalid_argument("reshuffle_baseline: need n >= 100");
    if (trials < 20) throw std::invalid_argument("reshuffle_baseline: need trials >= 20");

    const double a_in = zone_in.area();
    const double a_out = zone_out.area();
    const double p_out = a_out / (a_in + a_out);
    const auto range = zone_scale_range(zone_in, zone_out);

    std::vector<double> d2s(trials, std::numeric_limits<double>::quiet_NaN());
    std::atomic<int> failures{0};

    auto one_trial = [&](int t) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        PointSet pts;
        pts.reserve(n);
        for (int i = 0; i < n; ++i) {
            const ZoneSpec& z = unit(rng) < p_out ? zone_out : zone_in;
            pts.push_back(sample_zone_point(z, rng));
        }
        D2Config trial_cfg = cfg;
        trial_cfg.seed = derive_seed(seed, 0x7000000ULL + static_cast<std::uint64_t>(t));
        try {
            CorrelationFit fit = range
                ? estimate_d2(pts, range->first, range->second, trial_cfg.n_radii, trial_cfg)
                : estimate_d2_auto(pts, trial_cfg);
            d2s[t] = fit.d2;
        } catch (const std::exception&) {
            failures.fetch_add(1, std::memory_order_relaxed);
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    if (threads <= 1 || trials < 4) {
        for (int t = 0; t < trials; ++t) one_trial(t);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) one_trial(t);
        };
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < std::min(threads, static_cast<unsigned>(trials)); ++k)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (failures.load() * 10 > trials) throw EstimationError("reshuffle_trials_failed");

    BaselineInterval interval;
    for (double v : d2s)
        if (!std::isnan(v)) interval.per_trial_d2.push_back(v);
    interval.trials = static_cast<int>(interval.per_trial_d2.size());
    std::vector<double> sorted = interval.per_trial_d2;
    std::sort(sorted.begin(), sorted.end());
    interval.lo = percentile_sorted(sorted, 2.5);
    interval.hi = percentile_sorted(sorted, 97.5);
    return interval;
}

double dimension_reduction(const CorrelationFit& observed, const BaselineInterval& baseline) {
    const double mid = 0.5 * (baseline.lo + baseline.hi);
    if (!(mid > 0)) throw std::invalid_argument("dimension_reduction: baseline midpoint <= 0");
    return 1.0 - observed.d2 / mid;
}

}  // namespace courtlab
