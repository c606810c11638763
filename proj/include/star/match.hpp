#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "star/agent.hpp"
#include "star/feedback.hpp"
#include "star/proxy.hpp"
#include "star/social_code.hpp"

namespace star {

enum class SequenceMode { SeededShared, ExplicitList };

struct MatchConfig {
  TeamProfile team = TeamProfile::reference();
  int blocks_per_slice = 2;
  int board_width = Board::kDefaultWidth;
  int board_height = Board::kDefaultHeight;
  std::vector<Color> colors = {kColors.begin(), kColors.end()};
  SocialCodeKind social_code = SocialCodeKind::Global;
  DesignKind design = DesignKind::Parallel;
  std::uint64_t seed = 1;
  int games_count = 10;
  SequenceMode sequence_mode = SequenceMode::SeededShared;
  // ExplicitList: one list per game, reused cyclically if shorter.
  std::vector<std::vector<Piece>> explicit_sequences;
  // Game also ends after this many pieces; 0 disables the cap.
  int max_pieces_per_game = 400;
  JudgeOptions judge;

  int team_size() const { return team.size(); }
};

// Throws ConfigError.
void validate(const MatchConfig& config);

// Acting team slot for a block: agents take n consecutive blocks in turn.
constexpr int acting_slot(int block_index, int team_size, int blocks_per_slice) {
  return (block_index / blocks_per_slice) % team_size;
}

// Piece supply for one game. Seeded streams depend only on (seed, game
// index, color set), never on the design or agents, so every design sees
// the same pieces.
class PieceStream {
 public:
  PieceStream(const MatchConfig& config, int game_index);

  // nullopt once an explicit list is exhausted.
  std::optional<Piece> next();

 private:
  SequenceMode mode_;
  std::vector<Color> colors_;
  std::mt19937_64 rng_;
  std::vector<Piece> list_;
  std::size_t pos_ = 0;
};

// FNV-1a over the first `length` pieces of a game's stream.
std::string sequence_hash(const MatchConfig& config, int game_index,
                          int length = 256);

struct GameStats {
  int rows_cleared = 0;
  int actions = 0;
  int permissible_actions = 0;
};

struct TrainerContext {
  const MatchConfig& config;
  int game_index;
  int block_index;
  AgentId acting;
  const Board& before;
  const Piece& piece;
  const Selection& selection;
  const PlacementResult& outcome;
  const PermissibilityVerdict& verdict;
  const GameStats& stats;  // including this action
};

// Source of human feedback: the scripted proxy or a live session.
class Trainer {
 public:
  virtual ~Trainer() = default;
  virtual TrainerSignal feedback(const TrainerContext& ctx) = 0;
  virtual void game_started(const MatchConfig&, int /*game_index*/) {}
  virtual void game_ended(const MatchConfig&, int /*game_index*/, const GameStats&) {}
};

class ProxyTrainer : public Trainer {
 public:
  explicit ProxyTrainer(ProxyPolicy policy = {}) : policy_(policy) {}
  TrainerSignal feedback(const TrainerContext& ctx) override;
  const ProxyPolicy& policy() const { return policy_; }

 private:
  ProxyPolicy policy_;
};

struct DeliveredEvent {
  Channel channel;
  int value;  // effectiveness: -1/+1; social: 1 permissible, 0 unacceptable
  bool operator==(const DeliveredEvent&) const = default;
};

struct ActionEntry {
  int block = 0;
  AgentId agent = 0;
  std::uint64_t board_before = 0;
  Piece piece{};
  PlacementAction action;
  int rows_cleared = 0;
  std::uint64_t board_after = 0;
  PermissibilityVerdict verdict;
  TrainerSignal signal;
  std::vector<DeliveredEvent> events;
  double predicted_effectiveness = 0;
  double predicted_social = 0;
  int rank = 1;
  bool fallback = false;
};

enum class GameEnd { NoLegalAction, PieceCap, SequenceExhausted };
std::string_view to_string(GameEnd e);
GameEnd parse_game_end(std::string_view name);

struct GameRecord {
  int game_index = 0;
  std::uint64_t seed = 0;
  DesignKind design = DesignKind::Parallel;
  SocialCodeKind code = SocialCodeKind::Global;
  int board_width = Board::kDefaultWidth;
  int board_height = Board::kDefaultHeight;
  int blocks_per_slice = 2;
  TeamProfile team;
  JudgeOptions judge;
  std::string sequence_hash;
  std::vector<ActionEntry> actions;
  GameStats totals;
  GameEnd end = GameEnd::NoLegalAction;

  double pct_permissible() const {
    return totals.actions == 0 ? 100.0
                               : 100.0 * totals.permissible_actions / totals.actions;
  }
};

// One agent per team member, in team order.
std::vector<StarAgent> make_agents(const MatchConfig& config,
                                   const AgentConfig& agent_config);

using ActionObserver = std::function<void(const ActionEntry&, const Board& after)>;

// Plays one game to completion. Agents are matched to team members by
// position and keep whatever they learn.
GameRecord run_game(const MatchConfig& config, int game_index,
                    std::vector<StarAgent>& agents, Trainer& trainer,
                    const ActionObserver& observer = {});

// games_count games with the same agents, learning carried across games.
std::vector<GameRecord> run_suite(const MatchConfig& config,
                                  std::vector<StarAgent>& agents, Trainer& trainer);

}  // namespace star
