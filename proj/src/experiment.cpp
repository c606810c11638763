#include "star/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "star/errors.hpp"

namespace star {

OracleGame play_oracle_game(const MatchConfig& config, int game_index,
                            const OraclePlayer& player) {
  validate(config);
  OracleGame out;
  PieceStream stream(config, game_index);
  Board board(config.board_width, config.board_height);
  for (int block = 0;; ++block) {
    if (config.max_pieces_per_game > 0 && block >= config.max_pieces_per_game) break;
    const auto piece = stream.next();
    if (!piece) break;
    const auto candidates = enumerate_candidates(board, *piece);
    if (candidates.empty()) break;
    const AgentId acting =
        config.team.members()[static_cast<std::size_t>(
                                  acting_slot(block, config.team_size(), config.blocks_per_slice))]
            .id;

    std::size_t chosen = 0;
    bool chosen_permissible = true;
    if (!player.permissible_only) {
      chosen = best_candidate(player.policy, candidates);
      chosen_permissible =
          judge(config.social_code, config.team, acting, board,
                candidates[chosen].result.board, config.judge)
              .permissible;
    } else {
      int best_harm = std::numeric_limits<int>::max();
      double best_score = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto deltas = delta_incremental(config.team, board, *piece, candidates[i].action);
        const auto v = judge_deltas(config.social_code, deltas, acting, config.judge);
        const int h = harm(config.social_code, v, acting);
        const double s = eval_score(player.policy, candidates[i]);
        if (h < best_harm || (h == best_harm && s > best_score)) {
          best_harm = h;
          best_score = s;
          chosen = i;
        }
      }
      chosen_permissible = best_harm == 0;
      if (!chosen_permissible) ++out.fallbacks;
    }
    out.actions += 1;
    out.permissible_actions += chosen_permissible ? 1 : 0;
    out.rows_cleared += candidates[chosen].result.rows_cleared;
    board = candidates[chosen].result.board;
  }
  return out;
}

namespace {

std::vector<int> oracle_rows(const MatchConfig& config, const OraclePlayer& player) {
  std::vector<int> rows;
  for (int g = 0; g < config.games_count; ++g) {
    rows.push_back(play_oracle_game(config, g, player).rows_cleared);
  }
  return rows;
}

}  // namespace

std::vector<int> compute_upper_bound(const MatchConfig& config, const ProxyPolicy& policy) {
  return oracle_rows(config, {policy, true});
}

std::vector<int> unconstrained_greedy_rows(const MatchConfig& config,
                                           const ProxyPolicy& policy) {
  return oracle_rows(config, {policy, false});
}

void validate(const ExperimentGrid& grid) {
  if (grid.designs.empty() || grid.codes.empty() || grid.seeds.empty()) {
    throw ConfigError("experiment grid axes must be non-empty");
  }
  validate(grid.base);
}

std::vector<MetricsRow> MetricsTable::select(DesignKind d, SocialCodeKind c) const {
  std::vector<MetricsRow> out;
  for (const auto& r : rows) {
    if (r.design == d && r.code == c) out.push_back(r);
  }
  return out;
}

MetricsTable run_grid(const ExperimentGrid& grid, bool keep_records) {
  validate(grid);

  struct Cell {
    DesignKind design;
    SocialCodeKind code;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (auto code : grid.codes) {
    for (auto design : grid.designs) {
      for (auto seed : grid.seeds) cells.push_back({design, code, seed});
    }
  }
  struct BoundKey {
    SocialCodeKind code;
    std::uint64_t seed;
    auto operator<=>(const BoundKey&) const = default;
  };
  std::vector<BoundKey> bound_keys;
  for (auto code : grid.codes) {
    for (auto seed : grid.seeds) bound_keys.push_back({code, seed});
  }

  const auto config_for = [&grid](SocialCodeKind code, DesignKind design, std::uint64_t seed) {
    MatchConfig c = grid.base;
    c.social_code = code;
    c.design = design;
    c.seed = seed;
    return c;
  };

  struct CellResult {
    std::vector<GameRecord> records;
    std::optional<std::string> error;
  };
  std::vector<CellResult> results(cells.size());
  std::vector<std::vector<int>> bounds(bound_keys.size());

  // Tasks 0..bounds-1 compute upper bounds, the rest run suites.
  const std::size_t total = bound_keys.size() + cells.size();
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < total;) {
      if (t < bound_keys.size()) {
        const auto& k = bound_keys[t];
        bounds[t] = compute_upper_bound(config_for(k.code, DesignKind::Parallel, k.seed), grid.proxy);
        continue;
      }
      const std::size_t i = t - bound_keys.size();
      const auto config = config_for(cells[i].code, cells[i].design, cells[i].seed);
      try {
        auto agents = make_agents(config, grid.agent);
        ProxyTrainer trainer(grid.proxy);
        results[i].records = run_suite(config, agents, trainer);
      } catch (const std::exception& e) {
        results[i].error = e.what();
      }
    }
  };
  unsigned n_workers = grid.workers > 0 ? static_cast<unsigned>(grid.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(total));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  MetricsTable table;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    if (results[i].error) {
      table.failures.push_back({cell.design, cell.code, cell.seed, *results[i].error});
      continue;
    }
    const auto bk = std::find(bound_keys.begin(), bound_keys.end(), BoundKey{cell.code, cell.seed});
    const auto& bound = bounds[static_cast<std::size_t>(bk - bound_keys.begin())];
    for (const auto& rec : results[i].records) {
      table.rows.push_back({cell.design, cell.code, cell.seed, rec.game_index,
                            rec.totals.rows_cleared, rec.pct_permissible(),
                            bound.at(static_cast<std::size_t>(rec.game_index)),
                            rec.totals.actions, rec.sequence_hash});
    }
    if (keep_records) {
      table.suites.push_back({cell.design, cell.code, cell.seed, std::move(results[i].records)});
    }
  }
  return table;
}

std::vector<GameAggregate> aggregate_over_seeds(const MetricsTable& table) {
  std::map<std::tuple<SocialCodeKind, DesignKind, int>, std::vector<const MetricsRow*>> groups;
  for (const auto& r : table.rows) groups[{r.code, r.design, r.game}].push_back(&r);
  std::vector<GameAggregate> out;
  for (const auto& [key, rows] : groups) {
    GameAggregate a{std::get<1>(key), std::get<0>(key), std::get<2>(key),
                    static_cast<int>(rows.size()),
                    0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                    0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                    0};
    for (const auto* r : rows) {
      a.rows_mean += r->rows_cleared;
      a.rows_min = std::min<double>(a.rows_min, r->rows_cleared);
      a.rows_max = std::max<double>(a.rows_max, r->rows_cleared);
      a.pct_mean += r->pct_permissible;
      a.pct_min = std::min(a.pct_min, r->pct_permissible);
      a.pct_max = std::max(a.pct_max, r->pct_permissible);
      a.bound_mean += r->upper_bound_rows;
    }
    const double n = static_cast<double>(rows.size());
    a.rows_mean /= n;
    a.pct_mean /= n;
    a.bound_mean /= n;
    out.push_back(a);
  }
  return out;
}

SuiteAggregate suite_aggregate(const MetricsTable& table, DesignKind d, SocialCodeKind c) {
  const auto rows = table.select(d, c);
  SuiteAggregate a;
  if (rows.empty()) return a;
  for (const auto& r : rows) {
    a.rows_per_game += r.rows_cleared;
    a.pct_permissible += r.pct_permissible;
  }
  a.rows_per_game /= static_cast<double>(rows.size());
  a.pct_permissible /= static_cast<double>(rows.size());
  return a;
}

void write_metrics_csv(std::ostream& out, const MetricsTable& table) {
  out << "game,design,code,seed,rowsCleared,pctPermissible,upperBoundRows,actions,sequenceHash\n";
  for (const auto& r : table.rows) {
    out << r.game << ',' << to_string(r.design) << ',' << to_string(r.code) << ',' << r.seed
        << ',' << r.rows_cleared << ',' << r.pct_permissible << ',' << r.upper_bound_rows << ','
        << r.actions << ',' << r.sequence_hash << '\n';
  }
}

void write_suite_summary_csv(std::ostream& out, const std::vector<GameRecord>& records) {
  out << "game,design,code,rowsCleared,pctPermissible\n";
  for (const auto& r : records) {
    out << r.game_index << ',' << to_string(r.design) << ',' << to_string(r.code) << ','
        << r.totals.rows_cleared << ',' << r.pct_permissible() << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<GameAggregate>& agg) {
  out << "game,design,code,seeds,rowsMean,rowsMin,rowsMax,pctMean,pctMin,pctMax,upperBoundMean\n";
  for (const auto& a : agg) {
    out << a.game << ',' << to_string(a.design) << ',' << to_string(a.code) << ',' << a.seeds
        << ',' << a.rows_mean << ',' << a.rows_min << ',' << a.rows_max << ',' << a.pct_mean
        << ',' << a.pct_min << ',' << a.pct_max << ',' << a.bound_mean << '\n';
  }
}

}  // namespace star
