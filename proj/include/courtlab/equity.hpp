#pragma once

// Court equity: expected points of a shot, FGP times point value, and the
// equal-equity condition between a 2PT zone and its 3PT counterpart.

#include "courtlab/stats.hpp"

namespace courtlab {

struct EquityResult {
    double equity_in = 0;        // expected points on the inner (2PT) side
    double equity_out = 0;       // expected points on the outer (3PT) side
    double ratio_required = 0;   // FGP_out/FGP_in that would equalize equity
    double ratio_observed = 0;
    double equity_gap = 0;       // equity_out - equity_in
};

// fgp * 3 for a three-point attempt, fgp * 2 otherwise.
double equity(double fgp, bool is_three);

// Equity of a paired zone from empirical FGPs. in_is_three/out_is_three
// describe the point value on each side (false/true for the three-point
// study zones; false/false for the mid-range control pair).
EquityResult zone_equity_report(const ZoneCounts& counts_in, const ZoneCounts& counts_out,
                                bool in_is_three = false, bool out_is_three = true);

}  // namespace courtlab
