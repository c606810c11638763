#include "star/match.hpp"

#include <set>
#include <string>

#include "star/errors.hpp"

namespace star {

void validate(const MatchConfig& config) {
  if (config.team_size() < 1) throw ConfigError("team must have at least one agent");
  if (config.blocks_per_slice < 1) throw ConfigError("blocks_per_slice must be >= 1");
  if (config.board_width < 4 || config.board_height < 4) {
    throw ConfigError("board must be at least 4x4");
  }
  if (config.games_count < 1) throw ConfigError("games_count must be >= 1");
  if (config.max_pieces_per_game < 0) throw ConfigError("max_pieces_per_game must be >= 0");
  if (config.colors.empty()) throw ConfigError("color set is empty");
  std::set<Color> distinct(config.colors.begin(), config.colors.end());
  if (distinct.size() != config.colors.size()) throw ConfigError("duplicate color in color set");
  if (config.sequence_mode == SequenceMode::ExplicitList) {
    if (config.explicit_sequences.empty()) {
      throw ConfigError("explicit sequence mode needs at least one piece list");
    }
  }
}

PieceStream::PieceStream(const MatchConfig& config, int game_index)
    : mode_(config.sequence_mode), colors_(config.colors) {
  if (mode_ == SequenceMode::SeededShared) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(game_index)};
    rng_.seed(seq);
  } else {
    const auto& lists = config.explicit_sequences;
    list_ = lists.at(static_cast<std::size_t>(game_index) % lists.size());
  }
}

std::optional<Piece> PieceStream::next() {
  if (mode_ == SequenceMode::ExplicitList) {
    if (pos_ >= list_.size()) return std::nullopt;
    return list_[pos_++];
  }
  const std::uint64_t kinds = kShapes.size() * colors_.size();
  const std::uint64_t k = rng_() % kinds;
  return Piece{kShapes[k % kShapes.size()], colors_[k / kShapes.size()]};
}

std::string sequence_hash(const MatchConfig& config, int game_index, int length) {
  PieceStream stream(config, game_index);
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < length; ++i) {
    const auto p = stream.next();
    if (!p) break;
    mix(static_cast<std::uint64_t>(p->shape));
    mix(static_cast<std::uint64_t>(p->color));
  }
  return hash_hex(h);
}

TrainerSignal ProxyTrainer::feedback(const TrainerContext& ctx) {
  return proxy_signal(policy_, ctx.config.social_code, ctx.config.team, ctx.acting,
                      ctx.before, ctx.piece, ctx.selection.action, ctx.config.judge);
}

std::string_view to_string(GameEnd e) {
  switch (e) {
    case GameEnd::NoLegalAction: return "no_legal_action";
    case GameEnd::PieceCap: return "piece_cap";
    case GameEnd::SequenceExhausted: return "sequence_exhausted";
  }
  return "?";
}

GameEnd parse_game_end(std::string_view name) {
  for (GameEnd e : {GameEnd::NoLegalAction, GameEnd::PieceCap, GameEnd::SequenceExhausted}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown game end '" + std::string(name) + "'");
}

std::vector<StarAgent> make_agents(const MatchConfig& config,
                                   const AgentConfig& agent_config) {
  std::vector<StarAgent> agents;
  for (const auto& m : config.team.members()) {
    AgentConfig c = agent_config;
    c.init_seed = agent_config.init_seed + static_cast<std::uint64_t>(m.id);
    agents.emplace_back(m.id, c, config.design, config.board_width, config.board_height);
  }
  return agents;
}

GameRecord run_game(const MatchConfig& config, int game_index,
                    std::vector<StarAgent>& agents, Trainer& trainer,
                    const ActionObserver& observer) {
  validate(config);
  if (static_cast<int>(agents.size()) != config.team_size()) {
    throw ConfigError("agent count does not match team size");
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (agents[i].id() != config.team.members()[i].id) {
      throw ConfigError("agents must be ordered like the team");
    }
  }

  GameRecord rec;
  rec.game_index = game_index;
  rec.seed = config.seed;
  rec.design = config.design;
  rec.code = config.social_code;
  rec.board_width = config.board_width;
  rec.board_height = config.board_height;
  rec.blocks_per_slice = config.blocks_per_slice;
  rec.team = config.team;
  rec.judge = config.judge;
  rec.sequence_hash = sequence_hash(config, game_index);

  trainer.game_started(config, game_index);
  PieceStream stream(config, game_index);
  Board board(config.board_width, config.board_height);
  for (int block = 0;; ++block) {
    if (config.max_pieces_per_game > 0 && block >= config.max_pieces_per_game) {
      rec.end = GameEnd::PieceCap;
      break;
    }
    const auto piece = stream.next();
    if (!piece) {
      rec.end = GameEnd::SequenceExhausted;
      break;
    }
    if (legal_placements(board, *piece).empty()) {
      rec.end = GameEnd::NoLegalAction;
      break;
    }
    const int slot = acting_slot(block, config.team_size(), config.blocks_per_slice);
    StarAgent& agent = agents[static_cast<std::size_t>(slot)];

    const Selection sel = agent.select_action(board, *piece);
    const PlacementResult outcome = apply_placement(board, *piece, sel.action);
    const PermissibilityVerdict verdict =
        judge(config.social_code, config.team, agent.id(), board, outcome.board, config.judge);

    rec.totals.actions += 1;
    rec.totals.rows_cleared += outcome.rows_cleared;
    if (verdict.permissible) rec.totals.permissible_actions += 1;

    const TrainerContext ctx{config, game_index, block, agent.id(), board, *piece,
                             sel,    outcome,    verdict, rec.totals};
    const TrainerSignal signal = trainer.feedback(ctx);

    ActionEntry entry;
    entry.block = block;
    entry.agent = agent.id();
    entry.board_before = board.hash();
    entry.piece = *piece;
    entry.action = sel.action;
    entry.rows_cleared = outcome.rows_cleared;
    entry.board_after = outcome.board.hash();
    entry.verdict = verdict;
    entry.signal = signal;
    entry.predicted_effectiveness = sel.effectiveness;
    entry.predicted_social = sel.social_output;
    entry.rank = sel.audit.rank;
    entry.fallback = sel.audit.fallback;

    const FeedbackContext fctx{agent.id(), {board, *piece}, sel.action};
    for (const auto& e : route(config.design, signal, fctx)) {
      agent.ingest_feedback(e);
      entry.events.push_back(
          {e.channel(), e.channel() == Channel::Effectiveness
                            ? e.effectiveness_value()
                            : (e.social_label() == SocialLabel::Permissible ? 1 : 0)});
    }

    board = outcome.board;
    if (observer) observer(entry, board);
    rec.actions.push_back(std::move(entry));
  }
  trainer.game_ended(config, game_index, rec.totals);
  return rec;
}

std::vector<GameRecord> run_suite(const MatchConfig& config,
                                  std::vector<StarAgent>& agents, Trainer& trainer) {
  validate(config);
  std::vector<GameRecord> records;
  records.reserve(static_cast<std::size_t>(config.games_count));
  for (int g = 0; g < config.games_count; ++g) {
    records.push_back(run_game(config, g, agents, trainer));
  }
  return records;
}

}  // namespace star
