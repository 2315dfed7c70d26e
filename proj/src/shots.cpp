#include "courtlab/shots.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "courtlab/errors.hpp"

namespace courtlab {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct RowError {
    std::string reason;
};

long parse_int(const std::string& s) {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
}

double parse_num(const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
}

// Field order matches kCanonicalCsvHeader.
ShotRecord record_from_fields(const std::vector<std::string>& f, double unit_scale) {
    ShotRecord r;
    r.game_id = f[0];
    r.event_id = f[1];
    r.player_id = f[2];
    r.team_id = f[3];

    long period, minutes, seconds;
    try {
        period = parse_int(f[4]);
        minutes = parse_int(f[5]);
        seconds = parse_int(f[6]);
    } catch (const std::exception&) {
        throw RowError{"bad_number"};
    }
    if (period < 1) throw RowError{"bad_period"};
    if (minutes < 0 || seconds < 0) throw RowError{"bad_clock"};
    r.period = static_cast<int>(period);
    r.clock_remaining_s = static_cast<int>(minutes * 60 + seconds);

    r.action_type = f[7];
    if (f[8] == "2PT Field Goal")
        r.shot_type = ShotType::TwoPoint;
    else if (f[8] == "3PT Field Goal")
        r.shot_type = ShotType::ThreePoint;
    else
        throw RowError{"bad_shot_type"};
    r.shot_zone = f[9];

    double dist, loc_x, loc_y;
    try {
        dist = parse_num(f[10]);
        loc_x = parse_num(f[11]);
        loc_y = parse_num(f[12]);
    } catch (const std::exception&) {
        throw RowError{"bad_number"};
    }
    if (dist < 0) throw RowError{"negative_distance"};
    if (dist > kMaxShotDistanceFt) throw RowError{"distance_too_large"};
    r.shot_distance_ft = dist;
    r.x_ft = loc_x * unit_scale;
    r.y_ft = loc_y * unit_scale;
    if (r.y_ft < kMinYFt) throw RowError{"y_below_baseline"};
    if (std::abs(std::hypot(r.x_ft, r.y_ft) - dist) > kDistanceMismatchTolFt)
        throw RowError{"distance_mismatch"};

    if (f[13] == "1")
        r.made = true;
    else if (f[13] == "0")
        r.made = false;
    else
        throw RowError{"bad_made_flag"};
    return r;
}

ShotRecord record_from_json_line(const std::string& line, double unit_scale) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw RowError{"bad_json"};
    }
    if (!j.is_object()) throw RowError{"bad_json"};

    static const char* keys[14] = {
        "game_id", "event_id", "player_id", "team_id", "period", "minutes_remaining",
        "seconds_remaining", "action_type", "shot_type", "shot_zone", "shot_distance",
        "loc_x", "loc_y", "shot_made_flag"};
    std::vector<std::string> fields;
    fields.reserve(14);
    for (const char* key : keys) {
        if (!j.contains(key)) throw RowError{"missing_field"};
        const auto& v = j.at(key);
        if (v.is_string()) {
            fields.push_back(v.get<std::string>());
        } else if (v.is_number_integer()) {
            fields.push_back(std::to_string(v.get<long long>()));
        } else if (v.is_number()) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
            fields.emplace_back(buf);
        } else if (v.is_boolean()) {
            fields.push_back(v.get<bool>() ? "1" : "0");
        } else {
            throw RowError{"bad_field_type"};
        }
    }
    return record_from_fields(fields, unit_scale);
}

}  // namespace

IngestResult parse_shots(std::istream& source, ShotFormat format, double unit_scale) {
    if (!source) throw IngestError("unreadable input stream");
    if (!(unit_scale > 0)) throw ConfigError("unit_scale must be positive");

    IngestResult result;
    std::string line;

    if (format == ShotFormat::Csv) {
        if (!std::getline(source, line)) throw IngestError("empty input: missing CSV header");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != kCanonicalCsvHeader)
            throw IngestError("CSV header does not match the canonical schema");
    }

    while (std::getline(source, line)) {
        if (line.empty() || line == "\r") continue;
        ++result.report.total_rows;
        try {
            if (format == ShotFormat::Csv) {
                auto fields = split_csv(line);
                if (fields.size() != 14) throw RowError{"bad_field_count"};
                result.shots.push_back(record_from_fields(fields, unit_scale));
            } else {
                result.shots.push_back(record_from_json_line(line, unit_scale));
            }
            ++result.report.accepted;
        } catch (const RowError& e) {
            ++result.report.rejected;
            ++result.report.rejection_reasons[e.reason];
        }
    }
    if (source.bad()) throw IngestError("stream error while reading shots");
    return result;
}

void write_canonical_csv(const std::vector<ShotRecord>& shots, std::ostream& out,
                         double unit_scale) {
    if (!(unit_scale > 0)) throw ConfigError("unit_scale must be positive");
    out << kCanonicalCsvHeader << '\n';
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    for (const auto& s : shots) {
        out << s.game_id << ',' << s.event_id << ',' << s.player_id << ',' << s.team_id << ','
            << s.period << ',' << s.clock_remaining_s / 60 << ',' << s.clock_remaining_s % 60
            << ',' << s.action_type << ',' << to_string(s.shot_type) << ',' << s.shot_zone << ','
            << num(s.shot_distance_ft) << ',' << num(s.x_ft / unit_scale) << ','
            << num(s.y_ft / unit_scale) << ',' << (s.made ? 1 : 0) << '\n';
    }
}

const char* to_string(ShotType type) {
    return type == ShotType::TwoPoint ? "2PT Field Goal" : "3PT Field Goal";
}

}  // namespace courtlab
