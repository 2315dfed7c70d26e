#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: analytic pair-distance CDFs, a long-double binomial pmf
// recurrence, a rational normal-CDF approximation, and reference point-set
// generators (the chaos-game generator doubles as the analytic-dimension
// oracle for the Sierpinski triangle, D = log 3 / log 2).

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "courtlab/fractal.hpp"

namespace oracles {

// CDF of the distance between two uniform points in the unit square,
// valid for 0 <= r <= 1.
inline double unit_square_pair_cdf(double r) {
    return M_PI * r * r - (8.0 / 3.0) * r * r * r + 0.5 * r * r * r * r;
}

// CDF of |U - V| for U, V uniform on a segment of the given length.
inline double segment_pair_cdf(double r, double length) {
    double q = r / length;
    return 2.0 * q - q * q;
}

// Binomial pmf by long-double recurrence (no log-gamma involved).
inline std::vector<long double> binom_pmf_table(std::int64_t n, double p) {
    std::vector<long double> pmf(n + 1);
    long double lp = p, lq = 1.0L - p;
    // pmf(0) via logs to survive large n, then the multiplicative recurrence.
    pmf[0] = std::exp(static_cast<long double>(n) * std::log(lq));
    for (std::int64_t k = 0; k < n; ++k)
        pmf[k + 1] = pmf[k] * static_cast<long double>(n - k) / static_cast<long double>(k + 1) *
                     lp / lq;
    return pmf;
}

// Two-sided "sum of no-more-likely outcomes" binomial test from the table.
inline double binom_two_sided_oracle(std::int64_t k, std::int64_t n, double p) {
    auto pmf = binom_pmf_table(n, p);
    long double obs = pmf[k] * (1.0L + 1e-7L);
    long double total = 0;
    for (std::int64_t i = 0; i <= n; ++i)
        if (pmf[i] <= obs) total += pmf[i];
    return std::min(1.0, static_cast<double>(total));
}

// Abramowitz & Stegun 26.2.17, |error| < 7.5e-8.
inline double normal_cdf_as(double x) {
    double ax = std::abs(x);
    double t = 1.0 / (1.0 + 0.2316419 * ax);
    double poly = t * (0.319381530 +
                  t * (-0.356563782 + t * (1.781477937 + t * (-1.821255978 + t * 1.330274429))));
    double tail = std::exp(-0.5 * ax * ax) / std::sqrt(2.0 * M_PI) * poly;
    return x >= 0 ? 1.0 - tail : tail;
}

inline double two_prop_pooled_p_oracle(std::int64_t k1, std::int64_t n1, std::int64_t k2,
                                       std::int64_t n2) {
    double p1 = double(k1) / n1, p2 = double(k2) / n2;
    double pooled = double(k1 + k2) / double(n1 + n2);
    double se = std::sqrt(pooled * (1 - pooled) * (1.0 / n1 + 1.0 / n2));
    double z = (p1 - p2) / se;
    return 2.0 * (1.0 - normal_cdf_as(std::abs(z)));
}

inline courtlab::PointSet uniform_square(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    courtlab::PointSet pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

inline courtlab::PointSet uniform_segment(int n, double length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, length);
    courtlab::PointSet pts(n);
    for (auto& p : pts) p = {u(rng), 3.0};
    return pts;
}

inline courtlab::PointSet sierpinski_chaos_game(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vertex(0, 2);
    const double vx[3] = {0.0, 1.0, 0.5};
    const double vy[3] = {0.0, 0.0, std::sqrt(3.0) / 2.0};
    double x = 0.3, y = 0.2;
    for (int i = 0; i < 100; ++i) {  // burn-in onto the attractor
        int v = vertex(rng);
        x = 0.5 * (x + vx[v]);
        y = 0.5 * (y + vy[v]);
    }
    courtlab::PointSet pts(n);
    for (auto& p : pts) {
        int v = vertex(rng);
        x = 0.5 * (x + vx[v]);
        y = 0.5 * (y + vy[v]);
        p = {x, y};
    }
    return pts;
}

inline constexpr double kSierpinskiD2 = 1.5849625007211562;  // log 3 / log 2

}  // namespace oracles
