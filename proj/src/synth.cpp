#include "courtlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "courtlab/errors.hpp"
#include "courtlab/fractal.hpp"
#include "courtlab/rng.hpp"

namespace courtlab {

void SyntheticSpec::validate() const {
    if (n_shots < 0) throw ConfigError("synthetic spec: n_shots must be >= 0");
    if (outer_bias && !(*outer_bias >= 0 && *outer_bias <= 1))
        throw ConfigError("synthetic spec: outer_bias must be in [0,1]");
    if (!(background_fraction >= 0)) throw ConfigError("synthetic spec: bad background_fraction");
    if (!(default_fgp >= 0 && default_fgp <= 1))
        throw ConfigError("synthetic spec: default_fgp must be in [0,1]");
    auto pieces = fgp_by_distance;
    std::sort(pieces.begin(), pieces.end(),
              [](const FgpPiece& a, const FgpPiece& b) { return a.d_lo < b.d_lo; });
    double prev_hi = -1;
    for (const auto& p : pieces) {
        if (!(p.d_lo < p.d_hi)) throw ConfigError("synthetic spec: empty fgp piece");
        if (!(p.fgp >= 0 && p.fgp <= 1))
            throw ConfigError("synthetic spec: fgp must be in [0,1]");
        if (p.d_lo < prev_hi) throw ConfigError("synthetic spec: overlapping fgp pieces");
        prev_hi = p.d_hi;
    }
}

double SyntheticSpec::fgp_at(double distance_ft) const {
    for (const auto& p : fgp_by_distance)
        if (distance_ft >= p.d_lo && distance_ft < p.d_hi) return p.fgp;
    return default_fgp;
}

SyntheticSpec load_synthetic_spec(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synthetic spec: ") + e.what());
    }
    SyntheticSpec spec;
    try {
        spec.n_shots = j.at("n_shots").get<int>();
        if (j.contains("outer_bias")) {
            const auto& b = j.at("outer_bias");
            if (b.is_string()) {
                if (b.get<std::string>() != "geometric")
                    throw ConfigError("synthetic spec: outer_bias must be a number or \"geometric\"");
            } else {
                spec.outer_bias = b.get<double>();
            }
        }
        if (j.contains("fgp_by_distance"))
            for (const auto& piece : j.at("fgp_by_distance"))
                spec.fgp_by_distance.push_back(
                    {piece.at(0).get<double>(), piece.at(1).get<double>(), piece.at(2).get<double>()});
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("background_fraction"))
            spec.background_fraction = j.at("background_fraction").get<double>();
        if (j.contains("default_fgp")) spec.default_fgp = j.at("default_fgp").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synthetic spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

namespace {

bool beyond_three_point_line(double x, double y, const CourtModel& model) {
    if (y < model.corner_break_y()) return std::abs(x) >= model.corner_dist_ft;
    return std::hypot(x, y) >= model.crest_dist_ft;
}

ShotRecord make_record(int index, double x, double y, ShotType type, bool made,
                       const char* zone_tag) {
    ShotRecord r;
    r.game_id = "S1";
    r.event_id = std::to_string(index);
    r.player_id = "P1";
    r.team_id = "T1";
    r.period = 1 + index % 4;
    r.clock_remaining_s = 720 - (index * 7) % 720;
    r.action_type = "Jump Shot";
    r.shot_type = type;
    r.shot_zone = zone_tag;
    r.x_ft = x;
    r.y_ft = y;
    r.shot_distance_ft = std::hypot(x, y);
    r.made = made;
    return r;
}

}  // namespace

std::vector<ShotRecord> generate_synthetic(const SyntheticSpec& spec, const CourtModel& model) {
    spec.validate();
    const auto zones = make_study_zones(model);
    std::mt19937_64 rng(derive_seed(spec.seed, 0x5EEDULL));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    struct RegionPlan {
        Region region;
        double weight;
        const ZoneSpec* in;
        const ZoneSpec* out;
        double baseline;
    };
    std::vector<RegionPlan> plans;
    const double weights[] = {0.22, 0.22, 0.36, 0.20};
    for (std::size_t i = 0; i < 4; ++i) {
        Region region = kAllRegions[i];
        const ZoneSpec* in = *find_zone(zones, region_in_label(region));
        const ZoneSpec* out = *find_zone(zones, region_out_label(region));
        plans.push_back({region, weights[i], in, out, baseline_outer_fraction(*in, *out)});
    }

    std::vector<ShotRecord> shots;
    shots.reserve(spec.n_shots + static_cast<std::size_t>(spec.n_shots * spec.background_fraction) + 1);

    int index = 0;
    for (std::size_t pi = 0; pi < plans.size(); ++pi) {
        const auto& plan = plans[pi];
        int count = static_cast<int>(std::lround(spec.n_shots * plan.weight));
        // The control pair stays at its geometric baseline: mid-range shots
        // show no spatial bias, and it must behave as a null case.
        double p_outer = (plan.region == Region::Control || !spec.outer_bias)
                             ? plan.baseline
                             : *spec.outer_bias;
        for (int i = 0; i < count; ++i, ++index) {
            bool outer = unit(rng) < p_outer;
            Vec2 p = sample_zone_point(outer ? *plan.out : *plan.in, rng);
            ShotType type = (outer && region_out_is_three(plan.region)) ? ShotType::ThreePoint
                                                                        : ShotType::TwoPoint;
            bool made = unit(rng) < spec.fgp_at(std::hypot(p.x, p.y));
            shots.push_back(make_record(index, p.x, p.y, type, made, to_string(plan.region)));
        }
    }

    // Background shots over the half court, rejected out of the study bands.
    const int n_background = static_cast<int>(std::lround(spec.n_shots * spec.background_fraction));
    const double x_max = model.court_half_width_ft - 0.25;
    const double y_max = 35.0;
    for (int i = 0; i < n_background; ++i, ++index) {
        double x, y;
        do {
            x = -x_max + unit(rng) * 2 * x_max;
            y = model.baseline_y_ft + unit(rng) * (y_max - model.baseline_y_ft);
        } while (classify_shot(x, y, zones).has_value());
        ShotType type = beyond_three_point_line(x, y, model) ? ShotType::ThreePoint
                                                             : ShotType::TwoPoint;
        bool made = unit(rng) < spec.fgp_at(std::hypot(x, y));
        shots.push_back(make_record(index, x, y, type, made, "background"));
    }
    return shots;
}

}  // namespace courtlab
