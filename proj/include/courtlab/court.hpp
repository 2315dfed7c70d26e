#pragma once

// Three-point line geometry and the analysis zones around it.
//
// Court frame: basket center at the origin, x parallel to the baseline,
// y pointing toward half court, units in feet. The three-point line is a
// pair of straight segments at |x| = corner_dist_ft near the baseline and
// an arc of radius crest_dist_ft between the two corner breaks.

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace courtlab {

struct CourtModel {
    double corner_dist_ft = 22.0;      // straight-segment distance
    double crest_dist_ft = 23.9;       // arc radius (23.75 selectable via config)
    double court_half_width_ft = 25.0;
    double baseline_y_ft = -5.25;      // basket center to baseline
    double band_width_ft = 1.0;        // width of the in/out study bands

    // y where the arc meets the straight corner segment.
    double corner_break_y() const;

    // Throws std::invalid_argument if the constants are inconsistent.
    void validate() const;
};

// Court constants from key=value text. Unknown keys are an error; missing
// keys keep their defaults. Lines starting with '#' are comments.
CourtModel parse_court_config(std::istream& in);

enum class ZoneLabel {
    LeftCornerIn,
    LeftCornerOut,
    RightCornerIn,
    RightCornerOut,
    CrestIn,
    CrestOut,
    ControlIn,
    ControlOut,
};

const char* to_string(ZoneLabel label);

// A court region: either a band between two vertical lines or an annular
// sector around the basket. Membership is closed on the boundary nearer
// the basket and open on the farther one, so a shot exactly on the
// three-point line falls in the OUT zone.
struct ZoneSpec {
    enum class Kind { StraightBand, AnnularSector };

    Kind kind;
    ZoneLabel label;

    // StraightBand: x in (x_lo, x_hi] for left bands, [x_lo, x_hi) for
    // right bands, y in [y_lo, y_hi).
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;

    // AnnularSector: r in [r_lo, r_hi), theta in [theta_lo, theta_hi]
    // (radians, measured from +x, normalized into the span).
    double r_lo = 0, r_hi = 0, theta_lo = 0, theta_hi = 0;

    static ZoneSpec straight_band(ZoneLabel label, double x_lo, double x_hi,
                                  double y_lo, double y_hi);
    static ZoneSpec annular_sector(ZoneLabel label, double r_lo, double r_hi,
                                   double theta_lo, double theta_hi);

    bool contains(double x_ft, double y_ft) const;
    double area() const;  // exact: rectangle or 0.5*dtheta*(r_hi^2 - r_lo^2)
};

// The eight analysis zones: 1-ft bands inside/outside the straight corner
// segments and the crest arc, plus the 1-ft control annuli on either side
// of the 17-ft mid-range arc. Zones are pairwise disjoint point sets.
std::vector<ZoneSpec> make_study_zones(const CourtModel& model);

// area(out) / (area(in) + area(out)). The pair must share a boundary:
// straight bands with equal y-extent and touching x-bands on the same
// side, or sectors with equal theta span and out.r_lo == in.r_hi.
double baseline_outer_fraction(const ZoneSpec& zone_in, const ZoneSpec& zone_out);

// Zone containing the point, if any. Zones from make_study_zones are
// disjoint, so at most one matches.
std::optional<ZoneLabel> classify_shot(double x_ft, double y_ft,
                                       std::span<const ZoneSpec> zones);

std::optional<const ZoneSpec*> find_zone(std::span<const ZoneSpec> zones, ZoneLabel label);

// The paired in/out zones analyzed together. The control pair is 2PT on
// both sides; the rest are 2PT inside / 3PT outside.
enum class Region { LeftCorner, RightCorner, Crest, Control };

inline constexpr Region kAllRegions[] = {Region::LeftCorner, Region::RightCorner,
                                         Region::Crest, Region::Control};

const char* to_string(Region region);
ZoneLabel region_in_label(Region region);
ZoneLabel region_out_label(Region region);
inline bool region_out_is_three(Region region) { return region != Region::Control; }

}  // namespace courtlab
