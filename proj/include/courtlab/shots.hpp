#pragma once

// Shot-chart ingestion: delimited-text / JSON-lines records into the
// canonical in-memory representation, with per-row validation.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace courtlab {

enum class ShotType { TwoPoint, ThreePoint };

struct ShotRecord {
    std::string game_id;
    std::string event_id;
    std::string player_id;
    std::string team_id;
    int period = 1;
    int clock_remaining_s = 0;  // minutes*60 + seconds from the source
    std::string action_type;
    ShotType shot_type = ShotType::TwoPoint;
    std::string shot_zone;         // source-provided, retained but not trusted
    double shot_distance_ft = 0;
    double x_ft = 0, y_ft = 0;     // basket center at origin
    bool made = false;
};

struct IngestReport {
    std::size_t total_rows = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::map<std::string, std::size_t> rejection_reasons;
};

enum class ShotFormat { Csv, Jsonl };

struct IngestResult {
    std::vector<ShotRecord> shots;
    IngestReport report;
};

// Canonical column order for both CSV and JSONL keys.
inline constexpr const char* kCanonicalCsvHeader =
    "game_id,event_id,player_id,team_id,period,minutes_remaining,seconds_remaining,"
    "action_type,shot_type,shot_zone,shot_distance,loc_x,loc_y,shot_made_flag";

// Source consistency limits. Source distances are integer-rounded feet, so
// the location/distance cross-check allows 1 ft of slack.
inline constexpr double kDistanceMismatchTolFt = 1.0;
inline constexpr double kMaxShotDistanceFt = 94.0;
inline constexpr double kMinYFt = -5.25;

// Parse and validate a shot stream. unit_scale converts source location
// units to feet (0.1 for the common tenth-of-foot convention); distances
// are already feet. Malformed rows are rejected with a reason, never
// silently dropped. Throws IngestError on an unreadable stream or, for
// CSV, a header that does not match the canonical schema.
IngestResult parse_shots(std::istream& source, ShotFormat format, double unit_scale = 0.1);

// Serialize accepted records back to the canonical CSV schema. Locations
// are written in source units (x_ft / unit_scale) with enough precision to
// round-trip through parse_shots.
void write_canonical_csv(const std::vector<ShotRecord>& shots, std::ostream& out,
                         double unit_scale = 0.1);

const char* to_string(ShotType type);

}  // namespace courtlab
