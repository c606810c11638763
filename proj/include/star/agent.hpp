#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "star/features.hpp"
#include "star/feedback.hpp"
#include "star/learners.hpp"

namespace star {

struct AgentConfig {
  double effectiveness_learning_rate = 0.02;
  double social_learning_rate = 0.02;
  double decision_threshold = 0.5;
  int social_hidden_width = 0;  // 0: single logistic unit
  std::uint64_t init_seed = 0;  // hidden-layer initialization only
  // After an action passes the filter, also train toward "permissible" and
  // an effectiveness target of +1.
  bool self_training = false;
  // Extra passes over the labeled social history after each new label.
  int social_replay_passes = 3;

  bool operator==(const AgentConfig&) const = default;
};

struct AuditEntry {
  PlacementAction action;
  double effectiveness = 0;
  double social_output = 0;
  bool passed = false;
};

struct AuditTrail {
  bool filter_active = false;
  int rank = 1;                      // 1-based rank of the chosen placement by effectiveness
  std::vector<AuditEntry> examined;  // in the order the selector looked at them
  bool fallback = false;             // no placement predicted permissible
};

struct Selection {
  PlacementAction action;
  double effectiveness = 0;
  double social_output = 0;
  AuditTrail audit;
};

// A STAR agent: learned models of the trainer's effectiveness and social
// functions, an effective-action selector and a social filter.
class StarAgent {
 public:
  StarAgent(AgentId id, AgentConfig config, DesignKind design, int board_width,
            int board_height);

  AgentId id() const { return id_; }
  DesignKind design() const { return design_; }
  const AgentConfig& config() const { return config_; }

  // Ranks placements by predicted effectiveness (ties keep enumeration
  // order) and returns the first one the social filter passes. When the
  // filter rejects everything the placement with the highest social output
  // is returned. Throws NoLegalAction on a terminal state.
  Selection select_action(const Board& board, const Piece& piece);

  // Applies one gradient step on the model named by the event's channel,
  // followed by social_replay_passes sweeps over earlier social labels.
  // Channels closed by the design are ignored. Throws StaleFeedback unless
  // the event refers to this agent's most recent selection.
  void ingest_feedback(const FeedbackEvent& e);

  bool predict_permissible(const Board& board, const Piece& piece,
                           PlacementAction a) const;
  double social_output(const Board& board, const Piece& piece,
                       PlacementAction a) const;
  // Effectiveness features are centered on the mean over all legal
  // placements of the piece, so this enumerates the whole candidate set.
  double predict_effectiveness(const Board& board, const Piece& piece,
                               PlacementAction a) const;
  std::size_t social_history_size() const { return social_history_.size(); }

  const LinearRegressor<double>& effectiveness_model() const { return effectiveness_; }
  const LogisticClassifier<double>& social_model() const { return social_; }
  LinearRegressor<double>& effectiveness_model() { return effectiveness_; }
  LogisticClassifier<double>& social_model() { return social_; }

  bool has_pending() const { return pending_.has_value(); }

  nlohmann::json checkpoint() const;
  void restore(const nlohmann::json& checkpoint);

 private:
  nlohmann::json social_history_json() const;
  struct Pending {
    Board board;
    Piece piece;
    PlacementAction action;
    Eigen::VectorXd effectiveness_features;
    PairVector<double> social_features;
  };

  AgentId id_;
  AgentConfig config_;
  DesignKind design_;
  int board_width_;
  int board_height_;
  LinearRegressor<double> effectiveness_;
  LogisticClassifier<double> social_;
  std::optional<Pending> pending_;
  std::vector<PairVector<double>> social_history_;
  std::vector<double> social_labels_;
};

// Stable identifier of the hyperparameters a checkpoint was trained under.
std::string config_hash(const AgentConfig& config, DesignKind design,
                        int board_width, int board_height);

}  // namespace star
