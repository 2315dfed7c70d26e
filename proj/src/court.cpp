#include "courtlab/court.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "courtlab/errors.hpp"

namespace courtlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double CourtModel::corner_break_y() const {
    return std::sqrt(crest_dist_ft * crest_dist_ft - corner_dist_ft * corner_dist_ft);
}

void CourtModel::validate() const {
    if (!(corner_dist_ft > 0))
        throw std::invalid_argument("court: corner_dist_ft must be positive");
    if (!(corner_dist_ft < crest_dist_ft))
        throw std::invalid_argument("court: corner_dist_ft must be below crest_dist_ft");
    if (!(crest_dist_ft < court_half_width_ft + 10.0))
        throw std::invalid_argument("court: crest_dist_ft out of range");
    if (!(band_width_ft > 0))
        throw std::invalid_argument("court: band_width_ft must be positive");
    if (!(corner_break_y() > baseline_y_ft))
        throw std::invalid_argument("court: corner break below the baseline");
    // The crest sector is anchored where its inner band clears the corner
    // bands; that requires the break height to stay below the inner radius.
    if (!(corner_break_y() < crest_dist_ft - band_width_ft))
        throw std::invalid_argument("court: crest band too narrow for the corner break");
}

CourtModel parse_court_config(std::istream& in) {
    CourtModel model;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r\n");
            auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        double num = 0;
        try {
            size_t pos = 0;
            num = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": bad number '" + value + "'");
        }
        if (key == "corner_dist_ft")
            model.corner_dist_ft = num;
        else if (key == "crest_dist_ft")
            model.crest_dist_ft = num;
        else if (key == "court_half_width_ft")
            model.court_half_width_ft = num;
        else if (key == "baseline_y_ft")
            model.baseline_y_ft = num;
        else
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return model;
}

const char* to_string(ZoneLabel label) {
    switch (label) {
        case ZoneLabel::LeftCornerIn: return "left_corner_in";
        case ZoneLabel::LeftCornerOut: return "left_corner_out";
        case ZoneLabel::RightCornerIn: return "right_corner_in";
        case ZoneLabel::RightCornerOut: return "right_corner_out";
        case ZoneLabel::CrestIn: return "crest_in";
        case ZoneLabel::CrestOut: return "crest_out";
        case ZoneLabel::ControlIn: return "control_in";
        case ZoneLabel::ControlOut: return "control_out";
    }
    return "?";
}

ZoneSpec ZoneSpec::straight_band(ZoneLabel label, double x_lo, double x_hi,
                                 double y_lo, double y_hi) {
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
        throw std::invalid_argument("zone: empty straight band");
    ZoneSpec z;
    z.kind = Kind::StraightBand;
    z.label = label;
    z.x_lo = x_lo;
    z.x_hi = x_hi;
    z.y_lo = y_lo;
    z.y_hi = y_hi;
    return z;
}

ZoneSpec ZoneSpec::annular_sector(ZoneLabel label, double r_lo, double r_hi,
                                  double theta_lo, double theta_hi) {
    if (!(0 <= r_lo && r_lo < r_hi))
        throw std::invalid_argument("zone: empty annular sector");
    if (!(theta_lo < theta_hi) || theta_hi - theta_lo > 2 * kPi)
        throw std::invalid_argument("zone: bad sector span");
    ZoneSpec z;
    z.kind = Kind::AnnularSector;
    z.label = label;
    z.r_lo = r_lo;
    z.r_hi = r_hi;
    z.theta_lo = theta_lo;
    z.theta_hi = theta_hi;
    return z;
}

bool ZoneSpec::contains(double x, double y) const {
    if (kind == Kind::StraightBand) {
        if (y < y_lo || y >= y_hi) return false;
        if (x_hi <= 0) return x > x_lo && x <= x_hi;  // left band: inner edge is x_hi
        return x >= x_lo && x < x_hi;                 // right band: inner edge is x_lo
    }
    double r = std::hypot(x, y);
    if (r < r_lo || r >= r_hi) return false;
    double theta = std::atan2(y, x);
    while (theta < theta_lo) theta += 2 * kPi;
    return theta <= theta_hi;
}

double ZoneSpec::area() const {
    if (kind == Kind::StraightBand) return (x_hi - x_lo) * (y_hi - y_lo);
    return 0.5 * (theta_hi - theta_lo) * (r_hi * r_hi - r_lo * r_lo);
}

std::vector<ZoneSpec> make_study_zones(const CourtModel& model) {
    model.validate();
    const double w = model.band_width_ft;
    const double corner = model.corner_dist_ft;
    const double crest = model.crest_dist_ft;
    const double y0 = model.baseline_y_ft;
    const double y_break = model.corner_break_y();

    // Crest sector span: anchored where the inner crest band clears the top
    // of the corner bands, so every crest-band point sits at y >= y_break
    // and the eight zones stay disjoint.
    const double theta_c = std::asin(std::min(1.0, y_break / (crest - w)));
    // Control annuli around the 17-ft arc: widest symmetric span that keeps
    // the outer band on court (y >= baseline at its outer radius).
    const double control_r = 17.0;
    const double theta_0 = std::asin(std::max(-1.0, y0 / (control_r + w)));

    std::vector<ZoneSpec> zones;
    zones.push_back(ZoneSpec::straight_band(ZoneLabel::LeftCornerIn,
                                            -corner, -(corner - w), y0, y_break));
    zones.push_back(ZoneSpec::straight_band(ZoneLabel::LeftCornerOut,
                                            -(corner + w), -corner, y0, y_break));
    zones.push_back(ZoneSpec::straight_band(ZoneLabel::RightCornerIn,
                                            corner - w, corner, y0, y_break));
    zones.push_back(ZoneSpec::straight_band(ZoneLabel::RightCornerOut,
                                            corner, corner + w, y0, y_break));
    zones.push_back(ZoneSpec::annular_sector(ZoneLabel::CrestIn,
                                             crest - w, crest, theta_c, kPi - theta_c));
    zones.push_back(ZoneSpec::annular_sector(ZoneLabel::CrestOut,
                                             crest, crest + w, theta_c, kPi - theta_c));
    zones.push_back(ZoneSpec::annular_sector(ZoneLabel::ControlIn,
                                             control_r - w, control_r, theta_0, kPi - theta_0));
    zones.push_back(ZoneSpec::annular_sector(ZoneLabel::ControlOut,
                                             control_r, control_r + w, theta_0, kPi - theta_0));
    return zones;
}

double baseline_outer_fraction(const ZoneSpec& zone_in, const ZoneSpec& zone_out) {
    if (zone_in.kind != zone_out.kind)
        throw std::invalid_argument("baseline_outer_fraction: mismatched zone kinds");
    if (zone_in.kind == ZoneSpec::Kind::StraightBand) {
        if (zone_in.y_lo != zone_out.y_lo || zone_in.y_hi != zone_out.y_hi)
            throw std::invalid_argument("baseline_outer_fraction: bands differ in y-extent");
        bool left = zone_in.x_hi <= 0;
        double in_outer = left ? zone_in.x_lo : zone_in.x_hi;
        double out_inner = left ? zone_out.x_hi : zone_out.x_lo;
        if (in_outer != out_inner)
            throw std::invalid_argument("baseline_outer_fraction: bands do not share a boundary");
    } else {
        if (zone_in.theta_lo != zone_out.theta_lo || zone_in.theta_hi != zone_out.theta_hi)
            throw std::invalid_argument("baseline_outer_fraction: sectors differ in theta span");
        if (zone_in.r_hi != zone_out.r_lo)
            throw std::invalid_argument("baseline_outer_fraction: sectors do not share a boundary");
    }
    double a_in = zone_in.area();
    double a_out = zone_out.area();
    return a_out / (a_in + a_out);
}

std::optional<ZoneLabel> classify_shot(double x_ft, double y_ft,
                                       std::span<const ZoneSpec> zones) {
    for (const auto& z : zones)
        if (z.contains(x_ft, y_ft)) return z.label;
    return std::nullopt;
}

std::optional<const ZoneSpec*> find_zone(std::span<const ZoneSpec> zones, ZoneLabel label) {
    for (const auto& z : zones)
        if (z.label == label) return &z;
    return std::nullopt;
}

const char* to_string(Region region) {
    switch (region) {
        case Region::LeftCorner: return "left_corner";
        case Region::RightCorner: return "right_corner";
        case Region::Crest: return "crest";
        case Region::Control: return "control";
    }
    return "?";
}

ZoneLabel region_in_label(Region region) {
    switch (region) {
        case Region::LeftCorner: return ZoneLabel::LeftCornerIn;
        case Region::RightCorner: return ZoneLabel::RightCornerIn;
        case Region::Crest: return ZoneLabel::CrestIn;
        case Region::Control: return ZoneLabel::ControlIn;
    }
    return ZoneLabel::LeftCornerIn;
}

ZoneLabel region_out_label(Region region) {
    switch (region) {
        case Region::LeftCorner: return ZoneLabel::LeftCornerOut;
        case Region::RightCorner: return ZoneLabel::RightCornerOut;
        case Region::Crest: return ZoneLabel::CrestOut;
        case Region::Control: return ZoneLabel::ControlOut;
    }
    return ZoneLabel::LeftCornerOut;
}

}  // namespace courtlab
