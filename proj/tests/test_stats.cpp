#include <doctest.h>

#include <cmath>
#include <random>

#include "courtlab/errors.hpp"
#include "courtlab/stats.hpp"
#include "oracles.hpp"

using namespace courtlab;

TEST_CASE("wilson interval: textbook value and coverage") {
    SUBCASE("10 of 50") {
        auto [lo, hi] = wilson_interval(10, 50);
        CHECK(lo == doctest::Approx(0.112435).epsilon(1e-4));
        CHECK(hi == doctest::Approx(0.330373).epsilon(1e-4));
    }
    SUBCASE("95% coverage near 0.95 at p = 0.5") {
        std::mt19937_64 rng(12);
        std::binomial_distribution<int> draw(100, 0.5);
        int covered = 0;
        const int reps = 10000;
        for (int i = 0; i < reps; ++i) {
            auto [lo, hi] = wilson_interval(draw(rng), 100);
            if (lo <= 0.5 && 0.5 <= hi) ++covered;
        }
        double rate = double(covered) / reps;
        CHECK(rate > 0.94);
        CHECK(rate < 0.96);
    }
}

TEST_CASE("exact binomial test equals the pmf-recurrence oracle") {
    struct Case {
        std::int64_t k, n;
        double p0;
    };
    const Case cases[] = {{3, 10, 0.5},    {0, 10, 0.3},   {10, 10, 0.3},  {20, 37, 0.4},
                          {110, 200, 0.5}, {88, 200, 0.51}, {515, 1000, 0.5147},
                          {880, 1000, 0.51}, {500, 1000, 0.5}};
    for (const auto& c : cases) {
        double lib = binom_test_two_sided(c.k, c.n, c.p0);
        double oracle = oracles::binom_two_sided_oracle(c.k, c.n, c.p0);
        CHECK(lib == doctest::Approx(oracle).epsilon(1e-8));
    }
    CHECK(binom_test_two_sided(500, 1000, 0.5) >= 0.999);
    CHECK_THROWS_AS(binom_test_two_sided(3, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(binom_test_two_sided(11, 10, 0.5), std::invalid_argument);
}

TEST_CASE("two-proportion z-test against the A&S normal oracle") {
    CHECK(two_proportion_p_value(380, 1000, 350, 1000) ==
          doctest::Approx(oracles::two_prop_pooled_p_oracle(380, 1000, 350, 1000)).epsilon(1e-6));
    // z = 0.03 / sqrt(0.365*0.635*(2/1000)) = 1.39335 -> p = 0.16353
    CHECK(two_proportion_p_value(380, 1000, 350, 1000) == doctest::Approx(0.16353).epsilon(1e-3));
    CHECK(two_proportion_p_value(450, 1000, 350, 1000) < 1e-5);
    CHECK(two_proportion_p_value(350, 1000, 350, 1000) == doctest::Approx(1.0));
    CHECK(two_proportion_p_value(0, 50, 0, 80) == 1.0);
    CHECK_THROWS_AS(two_proportion_p_value(1, 0, 1, 10), std::invalid_argument);
}

TEST_CASE("outer fraction test") {
    auto counts = [](ZoneLabel label, std::int64_t attempts) {
        return ZoneCounts{label, attempts, attempts / 3};
    };
    SUBCASE("exact null") {
        auto r = outer_fraction_test(counts(ZoneLabel::LeftCornerIn, 500),
                                     counts(ZoneLabel::LeftCornerOut, 500), 0.5);
        CHECK(r.p_hat == 0.5);
        CHECK(r.p_value > 0.9);
        CHECK(r.ci_lo <= 0.5);
        CHECK(r.ci_hi >= 0.5);
        CHECK(r.n == 1000);
    }
    SUBCASE("overwhelming bias, gap inside the reported band") {
        auto r = outer_fraction_test(counts(ZoneLabel::CrestIn, 120),
                                     counts(ZoneLabel::CrestOut, 880), 0.51);
        CHECK(r.p_hat == doctest::Approx(0.88));
        CHECK(r.p_value < 1e-100);
        CHECK(r.p_hat - r.baseline == doctest::Approx(0.37));
    }
    SUBCASE("control-shaped data: CI covers the baseline") {
        auto r = outer_fraction_test(counts(ZoneLabel::ControlIn, 485),
                                     counts(ZoneLabel::ControlOut, 515), 35.0 / 68.0);
        CHECK(r.ci_lo < 35.0 / 68.0);
        CHECK(r.ci_hi > 35.0 / 68.0);
        CHECK(r.p_value > 0.05);
    }
    SUBCASE("label symmetry") {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::int64_t> att(15, 600);
        for (int rep = 0; rep < 40; ++rep) {
            std::int64_t a = att(rng), b = att(rng);
            double baseline = 0.3 + 0.4 * std::uniform_real_distribution<double>()(rng);
            auto fwd = outer_fraction_test({ZoneLabel::ControlIn, a, 0},
                                           {ZoneLabel::ControlOut, b, 0}, baseline);
            auto rev = outer_fraction_test({ZoneLabel::ControlOut, b, 0},
                                           {ZoneLabel::ControlIn, a, 0}, 1.0 - baseline);
            CHECK(rev.p_hat == doctest::Approx(1.0 - fwd.p_hat).epsilon(1e-12));
            CHECK(rev.p_value == doctest::Approx(fwd.p_value).epsilon(1e-9));
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(outer_fraction_test({ZoneLabel::ControlIn, 0, 0},
                                            {ZoneLabel::ControlOut, 0, 0}, 0.5),
                        EstimationError);
        CHECK_THROWS_AS(outer_fraction_test({ZoneLabel::ControlIn, 10, 0},
                                            {ZoneLabel::ControlOut, 10, 0}, 0.5),
                        EstimationError);
        CHECK_THROWS_AS(outer_fraction_test({ZoneLabel::ControlIn, 100, 0},
                                            {ZoneLabel::ControlOut, 100, 0}, 1.5),
                        std::invalid_argument);
    }
}

TEST_CASE("fgp equality test") {
    SUBCASE("identical proportions") {
        auto r = fgp_equality_test({ZoneLabel::CrestIn, 1000, 350}, {ZoneLabel::CrestOut, 1000, 350});
        CHECK(r.diff == 0.0);
        CHECK(r.p_value == doctest::Approx(1.0));
        CHECK(!r.significant);
    }
    SUBCASE("30-point gap on 1000 attempts is not significant") {
        auto r = fgp_equality_test({ZoneLabel::CrestIn, 1000, 380}, {ZoneLabel::CrestOut, 1000, 350});
        CHECK(r.p_value == doctest::Approx(0.16353).epsilon(1e-3));
        CHECK(!r.significant);
    }
    SUBCASE("100-point gap is significant") {
        auto r = fgp_equality_test({ZoneLabel::CrestIn, 1000, 450}, {ZoneLabel::CrestOut, 1000, 350});
        CHECK(r.p_value < 1e-5);
        CHECK(r.significant);
    }
    SUBCASE("zero attempts") {
        CHECK_THROWS_AS(fgp_equality_test({ZoneLabel::CrestIn, 0, 0},
                                          {ZoneLabel::CrestOut, 10, 5}),
                        EstimationError);
    }
}

namespace {

std::vector<ShotRecord> flat_fgp_shots(int per_bin, int bins, double fgp_below_30,
                                       double fgp_at_30_plus, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ShotRecord> shots;
    shots.reserve(static_cast<std::size_t>(per_bin) * bins);
    for (int b = 0; b < bins; ++b) {
        for (int i = 0; i < per_bin; ++i) {
            ShotRecord s;
            s.shot_distance_ft = b + u(rng);
            double fgp = s.shot_distance_ft < 30.0 ? fgp_below_30 : fgp_at_30_plus;
            s.made = u(rng) < fgp;
            shots.push_back(s);
        }
    }
    return shots;
}

}  // namespace

TEST_CASE("discontinuity scan") {
    SUBCASE("planted 9-point drop at 30 ft is the only deep flag") {
        auto shots = flat_fgp_shots(2000, 40, 0.40, 0.31, 77);
        auto scan = discontinuity_scan(shots, 1.0, 0.0, 40.0, 0.01, 50, true);
        bool found30 = false;
        for (const auto& f : scan.flagged) {
            if (f.distance_ft == 30.0) {
                found30 = true;
                CHECK(f.delta_fgp == doctest::Approx(-0.09).epsilon(0.35));
                CHECK(f.p_value < 0.1);
            } else {
                CHECK(f.distance_ft <= 5.0);
            }
        }
        CHECK(found30);
        // The same boundary clears the default uncorrected threshold too.
        auto loose = discontinuity_scan(shots, 1.0, 0.0, 40.0, 0.1, 50, false);
        bool found30_loose = false;
        for (const auto& f : loose.flagged) found30_loose |= f.distance_ft == 30.0;
        CHECK(found30_loose);
    }
    SUBCASE("constant FGP: no flags under a corrected scan") {
        auto shots = flat_fgp_shots(2000, 40, 0.38, 0.38, 5);
        auto scan = discontinuity_scan(shots, 1.0, 0.0, 40.0, 0.01, 50, true);
        CHECK(scan.flagged.empty());
    }
    SUBCASE("sparse bins are reported but excluded from flagging") {
        auto shots = flat_fgp_shots(2000, 35, 0.40, 0.31, 9);  // nothing beyond 35 ft
        auto scan = discontinuity_scan(shots, 1.0, 0.0, 40.0, 0.1, 50, false);
        REQUIRE(scan.n_per_bin.size() == 40);
        CHECK(scan.n_per_bin[37] == 0);
        CHECK(std::isnan(scan.fgp_per_bin[37]));
        CHECK(std::isnan(scan.adjacent_p_values[36]));
        for (const auto& f : scan.flagged) CHECK(f.distance_ft <= 35.0);
    }
    SUBCASE("per-boundary type-I rate stays near alpha") {
        const double alpha = 0.1;
        int tests = 0, flags = 0;
        for (std::uint64_t seed = 0; seed < 250; ++seed) {
            auto shots = flat_fgp_shots(400, 8, 0.38, 0.38, 1000 + seed);
            auto scan = discontinuity_scan(shots, 1.0, 0.0, 8.0, alpha, 50, false);
            for (double p : scan.adjacent_p_values) {
                if (std::isnan(p)) continue;
                ++tests;
                flags += p < alpha;
            }
        }
        double rate = double(flags) / tests;
        double se = std::sqrt(alpha * (1 - alpha) / tests);
        CHECK(rate <= alpha + 2 * se);
    }
    SUBCASE("errors") {
        std::vector<ShotRecord> none;
        CHECK_THROWS_AS(discontinuity_scan(none, 1.0, 0.0, 40.0), EstimationError);
        auto shots = flat_fgp_shots(10, 2, 0.4, 0.4, 1);
        CHECK_THROWS_AS(discontinuity_scan(shots, -1.0, 0.0, 40.0), std::invalid_argument);
        CHECK_THROWS_AS(discontinuity_scan(shots, 1.0, 40.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("distance density") {
    SUBCASE("single shot occupies one unit bin") {
        ShotRecord s;
        s.shot_distance_ft = 10.0;
        std::vector<ShotRecord> shots = {s};
        auto h = distance_density(shots, 1.0);
        REQUIRE(h.density.size() == 1);
        CHECK(h.bin_edges_ft.front() == 10.0);
        CHECK(h.bin_edges_ft.back() == 11.0);
        CHECK(h.density[0] == 1.0);
    }
    SUBCASE("two distant shots: half the mass each") {
        ShotRecord a, b;
        a.shot_distance_ft = 0.0;
        b.shot_distance_ft = 24.0;
        std::vector<ShotRecord> shots = {a, b};
        auto h = distance_density(shots, 1.0);
        REQUIRE(h.density.size() == 25);
        CHECK(h.density.front() == 0.5);
        CHECK(h.density.back() == 0.5);
        for (std::size_t i = 1; i + 1 < h.density.size(); ++i) CHECK(h.density[i] == 0.0);
    }
    SUBCASE("densities always integrate to one") {
        std::mt19937_64 rng(44);
        std::uniform_real_distribution<double> dist(0.0, 40.0);
        std::uniform_real_distribution<double> width(0.3, 3.0);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<ShotRecord> shots(200);
            for (auto& s : shots) s.shot_distance_ft = dist(rng);
            double w = width(rng);
            auto h = distance_density(shots, w);
            double integral = 0;
            for (double d : h.density) integral += d * w;
            CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("known mixture is recovered within sampling error") {
        // 60% uniform on [0,10), 40% uniform on [20,30).
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int n = 100000;
        std::vector<ShotRecord> shots(n);
        for (auto& s : shots) {
            if (u(rng) < 0.6)
                s.shot_distance_ft = 10.0 * u(rng);
            else
                s.shot_distance_ft = 20.0 + 10.0 * u(rng);
        }
        auto h = distance_density(shots, 1.0);
        for (std::size_t i = 0; i < h.density.size(); ++i) {
            double mid = 0.5 * (h.bin_edges_ft[i] + h.bin_edges_ft[i + 1]);
            double truth = mid < 10.0 ? 0.06 : (mid >= 20.0 && mid < 30.0 ? 0.04 : 0.0);
            double se = std::sqrt(std::max(truth, 0.005) / n);  // binomial, width 1
            CHECK(std::abs(h.density[i] - truth) < 3.5 * se);
        }
    }
    SUBCASE("empty input") {
        std::vector<ShotRecord> none;
        CHECK_THROWS_AS(distance_density(none, 1.0), EstimationError);
    }
}

TEST_CASE("zone count aggregation") {
    CourtModel model;
    auto zones = make_study_zones(model);

    SUBCASE("empty input: all zones present with zero counts") {
        std::vector<ShotRecord> none;
        auto counts = aggregate_zone_counts(none, zones);
        CHECK(counts.size() == 8);
        for (const auto& [label, c] : counts) {
            CHECK(c.attempts == 0);
            CHECK(c.made == 0);
        }
    }
    SUBCASE("shots accumulate into their zone") {
        std::vector<ShotRecord> shots(4);
        shots[0].x_ft = -22.5; shots[0].y_ft = 2.0; shots[0].made = true;   // left corner out
        shots[1].x_ft = -22.2; shots[1].y_ft = 5.0; shots[1].made = false;  // left corner out
        shots[2].x_ft = -22.9; shots[2].y_ft = 0.0; shots[2].made = false;  // left corner out
        shots[3].x_ft = 0.0;   shots[3].y_ft = 10.0;                         // no zone
        auto counts = aggregate_zone_counts(shots, zones);
        CHECK(counts.at(ZoneLabel::LeftCornerOut).attempts == 3);
        CHECK(counts.at(ZoneLabel::LeftCornerOut).made == 1);
        CHECK(counts.at(ZoneLabel::LeftCornerIn).attempts == 0);
    }
    SUBCASE("on-line shot lands in the out zone") {
        std::vector<ShotRecord> shots(1);
        shots[0].x_ft = 0.0;
        shots[0].y_ft = 23.9;
        auto counts = aggregate_zone_counts(shots, zones);
        CHECK(counts.at(ZoneLabel::CrestOut).attempts == 1);
        CHECK(counts.at(ZoneLabel::CrestIn).attempts == 0);
    }
}
