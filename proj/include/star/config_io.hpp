#pragma once

#include <string>

#include <json.hpp>

#include "star/experiment.hpp"

namespace star {

// Experiment configuration file (JSON). Every key is optional; missing keys
// keep the defaults. Layout:
//
//   {
//     "match": {
//       "board": {"width": 10, "height": 20},
//       "blocks_per_slice": 2,
//       "colors": ["red", "green", "blue"],
//       "team": [{"id": 0, "prefs": {"red-green": 1, ...}}, ...],
//       "code": "global" | "simple",
//       "design": "parallel" | "effect" | "social" | "blended",
//       "seed": 1,
//       "games": 10,
//       "max_pieces_per_game": 400,
//       "global_includes_actor": true,
//       "sequence": {"mode": "seeded" | "explicit",
//                    "lists": [["T:red", "O:blue", ...], ...]}
//     },
//     "proxy": {"aggregate_height": -0.51, "holes": -0.36, "bumpiness": -0.18,
//               "rows_cleared": 0.76, "approval_margin": 0.0},
//     "agent": {"effectiveness_learning_rate": 0.02,
//               "social_learning_rate": 0.02, "decision_threshold": 0.5,
//               "social_hidden_width": 0, "init_seed": 0,
//               "self_training": false, "social_replay_passes": 3},
//     "grid": {"designs": [...], "codes": [...], "seeds": [1], "workers": 0}
//   }
ExperimentGrid experiment_from_json(const nlohmann::json& j);
ExperimentGrid load_experiment_file(const std::string& path);
nlohmann::json to_json(const ExperimentGrid& grid);

MatchConfig match_from_json(const nlohmann::json& j, MatchConfig base = {});
nlohmann::json to_json(const MatchConfig& config);
ProxyPolicy proxy_from_json(const nlohmann::json& j, ProxyPolicy base = {});
nlohmann::json to_json(const ProxyPolicy& policy);
AgentConfig agent_config_from_json(const nlohmann::json& j, AgentConfig base = {});
nlohmann::json to_json(const AgentConfig& config);

}  // namespace star
