#include "star/agent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "star/errors.hpp"

namespace star {
namespace {

constexpr int kCheckpointVersion = 1;

std::vector<double> to_vector(const Vector<double>& v) {
  return {v.data(), v.data() + v.size()};
}

Vector<double> from_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector<double>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

StarAgent::StarAgent(AgentId id, AgentConfig config, DesignKind design,
                     int board_width, int board_height)
    : id_(id),
      config_(config),
      design_(design),
      board_width_(board_width),
      board_height_(board_height),
      effectiveness_(effectiveness_feature_count(board_width),
                     config.effectiveness_learning_rate),
      social_(kNumColorPairs, config.social_learning_rate,
              config.decision_threshold, config.social_hidden_width,
              config.init_seed) {
  if (config.social_replay_passes < 0) {
    throw ConfigError("social_replay_passes must be >= 0");
  }
  if (config.social_hidden_width < 0) {
    throw ConfigError("social_hidden_width must be >= 0");
  }
}

Selection StarAgent::select_action(const Board& board, const Piece& piece) {
  const auto candidates = enumerate_candidates(board, piece);
  if (candidates.empty()) {
    throw NoLegalAction("no legal placement for piece " +
                        std::string(1, shape_char(piece.shape)));
  }
  const auto n = candidates.size();
  const auto eff_x = centered_effectiveness_features(candidates, board_width_, board_height_);
  std::vector<double> eff(n);
  for (std::size_t i = 0; i < n; ++i) eff[i] = effectiveness_.predict(eff_x[i]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&eff](std::size_t a, std::size_t b) { return eff[a] > eff[b]; });

  Selection sel;
  sel.audit.filter_active = filter_active(design_);
  std::size_t chosen = order.front();
  if (!sel.audit.filter_active) {
    sel.audit.rank = 1;
    sel.audit.examined.push_back({candidates[chosen].action, eff[chosen],
                                  social_.predict(social_features(candidates[chosen])),
                                  true});
  } else {
    std::optional<std::size_t> passed;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = order[k];
      const double out = social_.predict(social_features(candidates[i]));
      const bool ok = out >= social_.threshold();
      sel.audit.examined.push_back({candidates[i].action, eff[i], out, ok});
      if (ok) {
        passed = i;
        sel.audit.rank = static_cast<int>(k) + 1;
        break;
      }
    }
    if (passed) {
      chosen = *passed;
    } else {
      sel.audit.fallback = true;
      std::size_t best_k = 0;
      for (std::size_t k = 1; k < n; ++k) {
        if (sel.audit.examined[k].social_output > sel.audit.examined[best_k].social_output) {
          best_k = k;
        }
      }
      chosen = order[best_k];
      sel.audit.rank = static_cast<int>(best_k) + 1;
    }
  }

  sel.action = candidates[chosen].action;
  sel.effectiveness = eff[chosen];
  sel.social_output = social_.predict(social_features(candidates[chosen]));
  pending_ = Pending{board, piece, sel.action, eff_x[chosen],
                     social_features(candidates[chosen])};

  if (config_.self_training && sel.audit.filter_active && !sel.audit.fallback) {
    social_.update(pending_->social_features, 1.0);
    effectiveness_.update(pending_->effectiveness_features, 1.0);
  }
  return sel;
}

void StarAgent::ingest_feedback(const FeedbackEvent& e) {
  const auto& ctx = e.context();
  if (!pending_ || ctx.agent != id_ || !(ctx.action == pending_->action) ||
      !(ctx.state.piece == pending_->piece) || !(ctx.state.board == pending_->board)) {
    throw StaleFeedback("feedback for agent " + std::to_string(ctx.agent) +
                        " does not match its pending action");
  }
  if (e.channel() == Channel::Effectiveness) {
    if (!effectiveness_channel_open(design_)) return;
    effectiveness_.update(pending_->effectiveness_features,
                          static_cast<double>(e.effectiveness_value()));
  } else {
    if (!social_channel_open(design_)) return;
    const double y = e.social_label() == SocialLabel::Permissible ? 1.0 : 0.0;
    social_.update(pending_->social_features, y);
    if (config_.social_replay_passes > 0) {
      for (int k = 0; k < config_.social_replay_passes; ++k) {
        for (std::size_t i = 0; i < social_history_.size(); ++i) {
          social_.update(social_history_[i], social_labels_[i]);
        }
      }
      social_history_.push_back(pending_->social_features);
      social_labels_.push_back(y);
    }
  }
}

double StarAgent::social_output(const Board& board, const Piece& piece,
                                PlacementAction a) const {
  return social_.predict(pair_count_delta(board, piece, a).cast<double>());
}

bool StarAgent::predict_permissible(const Board& board, const Piece& piece,
                                    PlacementAction a) const {
  return social_output(board, piece, a) >= social_.threshold();
}

double StarAgent::predict_effectiveness(const Board& board, const Piece& piece,
                                        PlacementAction a) const {
  const auto candidates = enumerate_candidates(board, piece);
  const auto x = centered_effectiveness_features(candidates, board_width_, board_height_);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].action == a) return effectiveness_.predict(x[i]);
  }
  throw IllegalPlacement("placement is not legal for this piece");
}

std::string config_hash(const AgentConfig& config, DesignKind design,
                        int board_width, int board_height) {
  std::ostringstream os;
  os.precision(17);
  os << config.effectiveness_learning_rate << '|' << config.social_learning_rate
     << '|' << config.decision_threshold << '|' << config.social_hidden_width
     << '|' << config.init_seed << '|' << config.self_training << '|'
     << config.social_replay_passes << '|'
     << to_string(design) << '|' << board_width << 'x' << board_height;
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return hash_hex(h);
}

nlohmann::json StarAgent::social_history_json() const {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < social_history_.size(); ++i) {
    rows.push_back({{"x", std::vector<double>(social_history_[i].data(),
                                              social_history_[i].data() + kNumColorPairs)},
                    {"y", social_labels_[i]}});
  }
  return rows;
}

nlohmann::json StarAgent::checkpoint() const {
  return {
      {"version", kCheckpointVersion},
      {"agent", id_},
      {"config_hash", config_hash(config_, design_, board_width_, board_height_)},
      {"design", to_string(design_)},
      {"board", {board_width_, board_height_}},
      {"social_hidden_width", config_.social_hidden_width},
      {"effectiveness", to_vector(effectiveness_.parameters())},
      {"social", to_vector(social_.parameters())},
      {"social_history", social_history_json()},
  };
}

void StarAgent::restore(const nlohmann::json& cp) {
  if (cp.at("version").get<int>() != kCheckpointVersion) {
    throw ConfigError("unsupported checkpoint version");
  }
  const auto expected = config_hash(config_, design_, board_width_, board_height_);
  if (cp.at("config_hash").get<std::string>() != expected) {
    throw ConfigError("checkpoint was trained under a different configuration");
  }
  effectiveness_.set_parameters(from_vector(cp.at("effectiveness").get<std::vector<double>>()));
  social_.set_parameters(from_vector(cp.at("social").get<std::vector<double>>()));
  social_history_.clear();
  social_labels_.clear();
  for (const auto& row : cp.value("social_history", nlohmann::json::array())) {
    const auto v = row.at("x").get<std::vector<double>>();
    if (v.size() != kNumColorPairs) throw ConfigError("bad social_history row");
    social_history_.push_back(Eigen::Map<const PairVector<double>>(v.data()));
    social_labels_.push_back(row.at("y").get<double>());
  }
  pending_.reset();
}

}  // namespace star
