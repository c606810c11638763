#include "star/config_io.hpp"

#include <fstream>

#include "star/errors.hpp"
#include "star/record_io.hpp"

namespace star {

using nlohmann::json;

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Piece parse_piece_token(const std::string& token) {
  const auto colon = token.find(':');
  if (colon != 1) throw ConfigError("piece token must look like 'T:red', got '" + token + "'");
  const auto shape = shape_from_char(token[0]);
  const auto color = parse_color_name(token.substr(2));
  if (!shape || !color) throw ConfigError("invalid piece token '" + token + "'");
  return {*shape, *color};
}

std::string piece_token(const Piece& p) {
  return std::string(1, shape_char(p.shape)) + ":" + std::string(color_name(p.color));
}

}  // namespace

MatchConfig match_from_json(const json& j, MatchConfig c) {
  try {
    if (j.contains("board")) {
      read_opt(j.at("board"), "width", c.board_width);
      read_opt(j.at("board"), "height", c.board_height);
    }
    read_opt(j, "blocks_per_slice", c.blocks_per_slice);
    if (j.contains("colors")) {
      c.colors.clear();
      for (const auto& name : j.at("colors")) {
        const auto color = parse_color_name(name.get<std::string>());
        if (!color) throw ConfigError("unknown color " + name.dump());
        c.colors.push_back(*color);
      }
    }
    if (j.contains("team")) c.team = team_from_json(j.at("team"));
    if (j.contains("code")) c.social_code = parse_social_code(j.at("code").get<std::string>());
    if (j.contains("design")) c.design = parse_design(j.at("design").get<std::string>());
    read_opt(j, "seed", c.seed);
    read_opt(j, "games", c.games_count);
    read_opt(j, "max_pieces_per_game", c.max_pieces_per_game);
    read_opt(j, "global_includes_actor", c.judge.global_includes_actor);
    if (j.contains("sequence")) {
      const auto& s = j.at("sequence");
      const auto mode = s.value("mode", std::string("seeded"));
      if (mode == "seeded") {
        c.sequence_mode = SequenceMode::SeededShared;
      } else if (mode == "explicit") {
        c.sequence_mode = SequenceMode::ExplicitList;
        c.explicit_sequences.clear();
        for (const auto& list : s.at("lists")) {
          std::vector<Piece> pieces;
          for (const auto& tok : list) pieces.push_back(parse_piece_token(tok.get<std::string>()));
          c.explicit_sequences.push_back(std::move(pieces));
        }
      } else {
        throw ConfigError("unknown sequence mode '" + mode + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("match config: ") + e.what());
  }
  validate(c);
  return c;
}

json to_json(const MatchConfig& c) {
  json colors = json::array();
  for (Color col : c.colors) colors.push_back(std::string(color_name(col)));
  json seq = {{"mode", c.sequence_mode == SequenceMode::SeededShared ? "seeded" : "explicit"}};
  if (c.sequence_mode == SequenceMode::ExplicitList) {
    json lists = json::array();
    for (const auto& list : c.explicit_sequences) {
      json l = json::array();
      for (const auto& p : list) l.push_back(piece_token(p));
      lists.push_back(l);
    }
    seq["lists"] = lists;
  }
  return {{"board", {{"width", c.board_width}, {"height", c.board_height}}},
          {"blocks_per_slice", c.blocks_per_slice},
          {"colors", colors},
          {"team", to_json(c.team)},
          {"code", std::string(to_string(c.social_code))},
          {"design", std::string(to_string(c.design))},
          {"seed", c.seed},
          {"games", c.games_count},
          {"max_pieces_per_game", c.max_pieces_per_game},
          {"global_includes_actor", c.judge.global_includes_actor},
          {"sequence", seq}};
}

ProxyPolicy proxy_from_json(const json& j, ProxyPolicy p) {
  read_opt(j, "aggregate_height", p.aggregate_height);
  read_opt(j, "holes", p.holes);
  read_opt(j, "bumpiness", p.bumpiness);
  read_opt(j, "rows_cleared", p.rows_cleared);
  read_opt(j, "approval_margin", p.approval_margin);
  if (p.approval_margin < 0) throw ConfigError("approval_margin must be >= 0");
  return p;
}

json to_json(const ProxyPolicy& p) {
  return {{"aggregate_height", p.aggregate_height}, {"holes", p.holes},
          {"bumpiness", p.bumpiness}, {"rows_cleared", p.rows_cleared},
          {"approval_margin", p.approval_margin}};
}

AgentConfig agent_config_from_json(const json& j, AgentConfig a) {
  read_opt(j, "effectiveness_learning_rate", a.effectiveness_learning_rate);
  read_opt(j, "social_learning_rate", a.social_learning_rate);
  read_opt(j, "decision_threshold", a.decision_threshold);
  read_opt(j, "social_hidden_width", a.social_hidden_width);
  read_opt(j, "init_seed", a.init_seed);
  read_opt(j, "self_training", a.self_training);
  read_opt(j, "social_replay_passes", a.social_replay_passes);
  if (a.decision_threshold < 0 || a.decision_threshold > 1) {
    throw ConfigError("decision_threshold must lie in [0, 1]");
  }
  if (a.social_hidden_width < 0) throw ConfigError("social_hidden_width must be >= 0");
  if (a.social_replay_passes < 0) throw ConfigError("social_replay_passes must be >= 0");
  return a;
}

json to_json(const AgentConfig& a) {
  return {{"effectiveness_learning_rate", a.effectiveness_learning_rate},
          {"social_learning_rate", a.social_learning_rate},
          {"decision_threshold", a.decision_threshold},
          {"social_hidden_width", a.social_hidden_width},
          {"init_seed", a.init_seed},
          {"self_training", a.self_training},
          {"social_replay_passes", a.social_replay_passes}};
}

ExperimentGrid experiment_from_json(const json& j) {
  ExperimentGrid g;
  try {
    if (j.contains("match")) g.base = match_from_json(j.at("match"));
    if (j.contains("proxy")) g.proxy = proxy_from_json(j.at("proxy"));
    if (j.contains("agent")) g.agent = agent_config_from_json(j.at("agent"));
    if (j.contains("grid")) {
      const auto& gr = j.at("grid");
      if (gr.contains("designs")) {
        g.designs.clear();
        for (const auto& d : gr.at("designs")) g.designs.push_back(parse_design(d.get<std::string>()));
      }
      if (gr.contains("codes")) {
        g.codes.clear();
        for (const auto& c : gr.at("codes")) g.codes.push_back(parse_social_code(c.get<std::string>()));
      }
      read_opt(gr, "seeds", g.seeds);
      read_opt(gr, "workers", g.workers);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  validate(g);
  return g;
}

ExperimentGrid load_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return experiment_from_json(j);
}

json to_json(const ExperimentGrid& g) {
  json designs = json::array(), codes = json::array();
  for (auto d : g.designs) designs.push_back(std::string(to_string(d)));
  for (auto c : g.codes) codes.push_back(std::string(to_string(c)));
  return {{"match", to_json(g.base)},
          {"proxy", to_json(g.proxy)},
          {"agent", to_json(g.agent)},
          {"grid", {{"designs", designs}, {"codes", codes}, {"seeds", g.seeds}, {"workers", g.workers}}}};
}

}  // namespace star
