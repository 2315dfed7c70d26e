#pragma once

// Synthetic shot-chart generator: the test harness for every estimator in
// the pipeline. Band shots land uniformly inside their assigned 1-ft band
// with a configurable inner/outer split; background shots cover the rest
// of the court; made flags follow a piecewise-constant FGP-by-distance.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/shots.hpp"

namespace courtlab {

struct FgpPiece {
    double d_lo = 0, d_hi = 0;
    double fgp = 0;
};

struct SyntheticSpec {
    int n_shots = 0;                   // band shots across the four regions
    std::optional<double> outer_bias;  // P(band shot lands outside); nullopt =
                                       // each region's own geometric baseline
    std::vector<FgpPiece> fgp_by_distance;  // non-overlapping; gaps fall back
    double default_fgp = 0.4;               // ...to this value
    double background_fraction = 0.5;  // extra court shots per band shot
    std::uint64_t seed = 0;

    void validate() const;
    double fgp_at(double distance_ft) const;
};

// JSON object with keys n_shots, outer_bias (number or "geometric"),
// fgp_by_distance ([[d_lo, d_hi, fgp], ...]), seed, background_fraction,
// default_fgp. Throws ConfigError on malformed input.
SyntheticSpec load_synthetic_spec(std::istream& in);

// Deterministic for a given spec.seed. Band shots split across regions
// (22% per corner, 36% crest, 20% control); background shots are placed
// uniformly over the half court excluding the study bands.
std::vector<ShotRecord> generate_synthetic(const SyntheticSpec& spec, const CourtModel& model);

}  // namespace courtlab
