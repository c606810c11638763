#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "star/match.hpp"

namespace star {

nlohmann::json to_json(const Piece& p);
Piece piece_from_json(const nlohmann::json& j);
nlohmann::json to_json(PlacementAction a);
PlacementAction action_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PreferenceMatrix& prefs);  // {"red-green": 1, ...}
PreferenceMatrix prefs_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TeamProfile& team);
TeamProfile team_from_json(const nlohmann::json& j);

// Newline-delimited JSON: per game a "header" line, one "action" line per
// placement and a closing "summary" line.
void write_records(std::ostream& out, const std::vector<GameRecord>& records);
std::string records_to_ndjson(const std::vector<GameRecord>& records);
std::vector<GameRecord> read_records(std::istream& in);
std::vector<GameRecord> read_records_file(const std::string& path);

struct ReplayReport {
  int games = 0;
  int actions = 0;
  int rows_cleared = 0;
  int permissible_actions = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Re-applies every recorded placement from an empty board and checks board
// hashes, rows cleared, verdicts and per-game totals.
ReplayReport replay(const std::vector<GameRecord>& records);

}  // namespace star
