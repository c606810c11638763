#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "star/match.hpp"

namespace star {

// Scripted greedy player over the proxy's evaluation. With `permissible_only`
// it keeps to ground-truth permissible placements, falling back to the
// least-harm placement (ties by evaluation) when there are none.
struct OraclePlayer {
  ProxyPolicy policy;
  bool permissible_only = true;
};

struct OracleGame {
  int rows_cleared = 0;
  int actions = 0;
  int permissible_actions = 0;
  int fallbacks = 0;
};

OracleGame play_oracle_game(const MatchConfig& config, int game_index,
                            const OraclePlayer& player);

// Rows the permissible-only oracle clears in each of the config's games.
// Reference ceiling for a team that has learned the proxy's policy and the
// social code perfectly.
std::vector<int> compute_upper_bound(const MatchConfig& config,
                                     const ProxyPolicy& policy);

// Same games with no social constraint.
std::vector<int> unconstrained_greedy_rows(const MatchConfig& config,
                                           const ProxyPolicy& policy);

struct ExperimentGrid {
  MatchConfig base;
  ProxyPolicy proxy;
  AgentConfig agent;
  std::vector<DesignKind> designs = {kDesigns.begin(), kDesigns.end()};
  std::vector<SocialCodeKind> codes = {SocialCodeKind::Global, SocialCodeKind::Simple};
  std::vector<std::uint64_t> seeds = {1};
  int workers = 0;  // 0: hardware concurrency
};

void validate(const ExperimentGrid& grid);

struct MetricsRow {
  DesignKind design;
  SocialCodeKind code;
  std::uint64_t seed;
  int game;
  int rows_cleared;
  double pct_permissible;
  int upper_bound_rows;
  int actions;
  std::string sequence_hash;
};

struct CellFailure {
  DesignKind design;
  SocialCodeKind code;
  std::uint64_t seed;
  std::string error;
};

struct SuiteOutput {
  DesignKind design;
  SocialCodeKind code;
  std::uint64_t seed;
  std::vector<GameRecord> records;
};

struct MetricsTable {
  std::vector<MetricsRow> rows;  // ordered by (code, design, seed, game)
  std::vector<CellFailure> failures;
  std::vector<SuiteOutput> suites;  // filled when records are kept

  std::vector<MetricsRow> select(DesignKind d, SocialCodeKind c) const;
};

// One suite per (design, code, seed), on a worker pool. A failing cell is
// recorded in `failures` and does not abort the others.
MetricsTable run_grid(const ExperimentGrid& grid, bool keep_records = false);

struct GameAggregate {
  DesignKind design;
  SocialCodeKind code;
  int game;
  int seeds;
  double rows_mean, rows_min, rows_max;
  double pct_mean, pct_min, pct_max;
  double bound_mean;
};

// Mean/min/max over seeds per (design, code, game).
std::vector<GameAggregate> aggregate_over_seeds(const MetricsTable& table);

// Suite-level aggregates used for the design comparison.
struct SuiteAggregate {
  double rows_per_game = 0;     // mean rows cleared per game
  double pct_permissible = 0;   // mean per-game percentage
};
SuiteAggregate suite_aggregate(const MetricsTable& table, DesignKind d,
                               SocialCodeKind c);

// game,design,code,seed,rowsCleared,pctPermissible,upperBoundRows,actions,sequenceHash
void write_metrics_csv(std::ostream& out, const MetricsTable& table);
// game,design,code,rowsCleared,pctPermissible
void write_suite_summary_csv(std::ostream& out, const std::vector<GameRecord>& records);
void write_aggregate_csv(std::ostream& out, const std::vector<GameAggregate>& agg);

// Learning curves for one social code: rows cleared and percentage of
// permissible actions per game for every design, plus the upper bound.
std::string render_curves_svg(const MetricsTable& table, SocialCodeKind code);

}  // namespace star
