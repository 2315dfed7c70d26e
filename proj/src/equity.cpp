#include "courtlab/equity.hpp"

#include <stdexcept>

#include "courtlab/errors.hpp"

namespace courtlab {

double equity(double fgp, bool is_three) {
    if (!(fgp >= 0 && fgp <= 1)) throw std::invalid_argument("equity: fgp must be in [0,1]");
    return fgp * (is_three ? 3.0 : 2.0);
}

EquityResult zone_equity_report(const ZoneCounts& counts_in, const ZoneCounts& counts_out,
                                bool in_is_three, bool out_is_three) {
    if (counts_in.attempts <= 0 || counts_out.attempts <= 0)
        throw EstimationError("zone_equity_report: zero attempts");
    const double fgp_in = static_cast<double>(counts_in.made) / counts_in.attempts;
    const double fgp_out = static_cast<double>(counts_out.made) / counts_out.attempts;
    if (fgp_in == 0) throw EstimationError("zone_equity_report: inner FGP is zero");

    EquityResult r;
    r.equity_in = equity(fgp_in, in_is_three);
    r.equity_out = equity(fgp_out, out_is_three);
    const double value_in = in_is_three ? 3.0 : 2.0;
    const double value_out = out_is_three ? 3.0 : 2.0;
    r.ratio_required = value_in / value_out;
    r.ratio_observed = fgp_out / fgp_in;
    r.equity_gap = r.equity_out - r.equity_in;
    return r;
}

}  // namespace courtlab
