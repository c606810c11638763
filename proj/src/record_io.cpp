#include "star/record_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "star/errors.hpp"

namespace star {

using nlohmann::json;

json to_json(const Piece& p) {
  return {{"shape", std::string(1, shape_char(p.shape))},
          {"color", std::string(color_name(p.color))}};
}

Piece piece_from_json(const json& j) {
  const auto shape = j.at("shape").get<std::string>();
  const auto s = shape.size() == 1 ? shape_from_char(shape[0]) : std::nullopt;
  const auto c = parse_color_name(j.at("color").get<std::string>());
  if (!s || !c) throw ConfigError("invalid piece " + j.dump());
  return {*s, *c};
}

json to_json(PlacementAction a) {
  return {{"rotation", a.rotation}, {"column", a.column}};
}

PlacementAction action_from_json(const json& j) {
  return {j.at("rotation").get<int>(), j.at("column").get<int>()};
}

json to_json(const PreferenceMatrix& prefs) {
  json j = json::object();
  for (int p = 0; p < kNumColorPairs; ++p) j[pair_name(p)] = prefs.weights()(p);
  return j;
}

PreferenceMatrix prefs_from_json(const json& j) {
  PairVector<int> w = PairVector<int>::Zero();
  for (const auto& [key, value] : j.items()) {
    const auto p = parse_pair_name(key);
    if (!p) throw ConfigError("unknown color pair '" + key + "'");
    w(*p) = value.get<int>();
  }
  return PreferenceMatrix(w);
}

json to_json(const TeamProfile& team) {
  json arr = json::array();
  for (const auto& m : team.members()) arr.push_back({{"id", m.id}, {"prefs", to_json(m.prefs)}});
  return arr;
}

TeamProfile team_from_json(const json& j) {
  std::vector<TeamMember> members;
  for (const auto& m : j) members.push_back({m.at("id").get<int>(), prefs_from_json(m.at("prefs"))});
  return TeamProfile(std::move(members));
}

namespace {

json signal_to_json(const TrainerSignal& s) {
  return {{"effectiveness", s.effectiveness ? json(*s.effectiveness) : json(nullptr)},
          {"social", s.social ? json(std::string(to_string(*s.social))) : json(nullptr)}};
}

TrainerSignal signal_from_json(const json& j) {
  TrainerSignal s;
  if (!j.at("effectiveness").is_null()) s.effectiveness = j.at("effectiveness").get<int>();
  if (!j.at("social").is_null()) s.social = parse_social_label(j.at("social").get<std::string>());
  return s;
}

json header_json(const GameRecord& r) {
  return {{"type", "header"},
          {"game", r.game_index},
          {"seed", r.seed},
          {"design", std::string(to_string(r.design))},
          {"code", std::string(to_string(r.code))},
          {"board", {r.board_width, r.board_height}},
          {"blocks_per_slice", r.blocks_per_slice},
          {"global_includes_actor", r.judge.global_includes_actor},
          {"team", to_json(r.team)},
          {"sequence_hash", r.sequence_hash}};
}

json action_json(const ActionEntry& e) {
  json deltas = json::object();
  for (const auto& [id, d] : e.verdict.per_agent_deltas) deltas[std::to_string(id)] = d;
  json events = json::array();
  for (const auto& ev : e.events) {
    events.push_back({{"channel", std::string(to_string(ev.channel))}, {"value", ev.value}});
  }
  return {{"type", "action"},
          {"block", e.block},
          {"agent", e.agent},
          {"before", hash_hex(e.board_before)},
          {"piece", to_json(e.piece)},
          {"action", to_json(e.action)},
          {"rows_cleared", e.rows_cleared},
          {"after", hash_hex(e.board_after)},
          {"verdict", {{"permissible", e.verdict.permissible}, {"delta", e.verdict.delta}, {"deltas", deltas}}},
          {"signal", signal_to_json(e.signal)},
          {"events", events},
          {"prediction",
           {{"effectiveness", e.predicted_effectiveness},
            {"social", e.predicted_social},
            {"rank", e.rank},
            {"fallback", e.fallback}}}};
}

json summary_json(const GameRecord& r) {
  return {{"type", "summary"},
          {"game", r.game_index},
          {"rows_cleared", r.totals.rows_cleared},
          {"actions", r.totals.actions},
          {"permissible", r.totals.permissible_actions},
          {"end", std::string(to_string(r.end))}};
}

std::uint64_t parse_hash(const json& j) {
  return std::stoull(j.get<std::string>(), nullptr, 16);
}

}  // namespace

void write_records(std::ostream& out, const std::vector<GameRecord>& records) {
  for (const auto& r : records) {
    out << header_json(r).dump() << '\n';
    for (const auto& e : r.actions) out << action_json(e).dump() << '\n';
    out << summary_json(r).dump() << '\n';
  }
}

std::string records_to_ndjson(const std::vector<GameRecord>& records) {
  std::ostringstream os;
  write_records(os, records);
  return os.str();
}

std::vector<GameRecord> read_records(std::istream& in) {
  std::vector<GameRecord> out;
  GameRecord* cur = nullptr;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ConfigError("record line " + std::to_string(line_no) + ": " + e.what());
    }
    const auto type = j.at("type").get<std::string>();
    if (type == "header") {
      GameRecord r;
      r.game_index = j.at("game").get<int>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.design = parse_design(j.at("design").get<std::string>());
      r.code = parse_social_code(j.at("code").get<std::string>());
      r.board_width = j.at("board").at(0).get<int>();
      r.board_height = j.at("board").at(1).get<int>();
      r.blocks_per_slice = j.at("blocks_per_slice").get<int>();
      r.judge.global_includes_actor = j.at("global_includes_actor").get<bool>();
      r.team = team_from_json(j.at("team"));
      r.sequence_hash = j.at("sequence_hash").get<std::string>();
      out.push_back(std::move(r));
      cur = &out.back();
      continue;
    }
    if (!cur) throw ConfigError("record line " + std::to_string(line_no) + " precedes any header");
    if (type == "action") {
      ActionEntry e;
      e.block = j.at("block").get<int>();
      e.agent = j.at("agent").get<int>();
      e.board_before = parse_hash(j.at("before"));
      e.piece = piece_from_json(j.at("piece"));
      e.action = action_from_json(j.at("action"));
      e.rows_cleared = j.at("rows_cleared").get<int>();
      e.board_after = parse_hash(j.at("after"));
      const auto& v = j.at("verdict");
      e.verdict.permissible = v.at("permissible").get<bool>();
      e.verdict.delta = v.at("delta").get<int>();
      for (const auto& [id, d] : v.at("deltas").items()) {
        e.verdict.per_agent_deltas[std::stoi(id)] = d.get<int>();
      }
      e.signal = signal_from_json(j.at("signal"));
      for (const auto& ev : j.at("events")) {
        e.events.push_back({ev.at("channel").get<std::string>() == "social" ? Channel::Social
                                                                           : Channel::Effectiveness,
                            ev.at("value").get<int>()});
      }
      const auto& p = j.at("prediction");
      e.predicted_effectiveness = p.at("effectiveness").get<double>();
      e.predicted_social = p.at("social").get<double>();
      e.rank = p.at("rank").get<int>();
      e.fallback = p.at("fallback").get<bool>();
      cur->actions.push_back(std::move(e));
    } else if (type == "summary") {
      cur->totals.rows_cleared = j.at("rows_cleared").get<int>();
      cur->totals.actions = j.at("actions").get<int>();
      cur->totals.permissible_actions = j.at("permissible").get<int>();
      cur->end = parse_game_end(j.at("end").get<std::string>());
      cur = nullptr;
    } else {
      throw ConfigError("unknown record type '" + type + "'");
    }
  }
  return out;
}

std::vector<GameRecord> read_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open record file " + path);
  return read_records(in);
}

ReplayReport replay(const std::vector<GameRecord>& records) {
  ReplayReport report;
  for (const auto& r : records) {
    ++report.games;
    Board board(r.board_width, r.board_height);
    GameStats totals;
    const auto where = [&r](const ActionEntry& e) {
      return "game " + std::to_string(r.game_index) + " block " + std::to_string(e.block) + ": ";
    };
    for (const auto& e : r.actions) {
      ++report.actions;
      if (board.hash() != e.board_before) {
        report.mismatches.push_back(where(e) + "board-before hash differs");
      }
      const int slot = acting_slot(e.block, r.team.size(), r.blocks_per_slice);
      if (r.team.members()[static_cast<std::size_t>(slot)].id != e.agent) {
        report.mismatches.push_back(where(e) + "acting agent out of turn");
      }
      PlacementResult out;
      try {
        out = apply_placement(board, e.piece, e.action);
      } catch (const IllegalPlacement& ex) {
        report.mismatches.push_back(where(e) + ex.what());
        break;
      }
      if (out.board.hash() != e.board_after) {
        report.mismatches.push_back(where(e) + "board-after hash differs");
      }
      if (out.rows_cleared != e.rows_cleared) {
        report.mismatches.push_back(where(e) + "rows cleared differs");
      }
      const auto v = judge(r.code, r.team, e.agent, board, out.board, r.judge);
      if (v.permissible != e.verdict.permissible || v.per_agent_deltas != e.verdict.per_agent_deltas) {
        report.mismatches.push_back(where(e) + "verdict differs");
      }
      totals.actions += 1;
      totals.rows_cleared += out.rows_cleared;
      totals.permissible_actions += v.permissible ? 1 : 0;
      board = out.board;
    }
    if (totals.actions != r.totals.actions || totals.rows_cleared != r.totals.rows_cleared ||
        totals.permissible_actions != r.totals.permissible_actions) {
      report.mismatches.push_back("game " + std::to_string(r.game_index) + ": totals differ");
    }
    report.rows_cleared += totals.rows_cleared;
    report.permissible_actions += totals.permissible_actions;
  }
  return report;
}

}  // namespace star
