#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "star/config_io.hpp"
#include "star/errors.hpp"
#include "star/experiment.hpp"
#include "star/gateway.hpp"
#include "star/record_io.hpp"

namespace fs = std::filesystem;
using namespace star;

namespace {

std::atomic<bool> g_interrupted{false};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

ExperimentGrid base_grid(const std::string& config_path) {
  return config_path.empty() ? ExperimentGrid{} : load_experiment_file(config_path);
}

struct MatchFlags {
  std::string config;
  std::string design;
  std::string code;
  int games = -1;
  long long seed = -1;
  int blocks = -1;
  int max_pieces = -1;
};

void add_match_flags(CLI::App* cmd, MatchFlags& f) {
  cmd->add_option("--config", f.config, "JSON experiment file")->check(CLI::ExistingFile);
  cmd->add_option("--design", f.design, "parallel|effect|social|blended");
  cmd->add_option("--code", f.code, "global|simple");
  cmd->add_option("--games", f.games, "games per suite")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "piece sequence seed")->check(CLI::NonNegativeNumber);
  cmd->add_option("--blocks-per-slice", f.blocks, "consecutive blocks per agent")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-pieces", f.max_pieces, "piece cap per game, 0 for none")
      ->check(CLI::NonNegativeNumber);
}

ExperimentGrid resolve(const MatchFlags& f) {
  auto g = base_grid(f.config);
  if (!f.design.empty()) g.base.design = parse_design(f.design);
  if (!f.code.empty()) g.base.social_code = parse_social_code(f.code);
  if (f.games > 0) g.base.games_count = f.games;
  if (f.seed >= 0) g.base.seed = static_cast<std::uint64_t>(f.seed);
  if (f.blocks > 0) g.base.blocks_per_slice = f.blocks;
  if (f.max_pieces >= 0) g.base.max_pieces_per_game = f.max_pieces;
  validate(g.base);
  return g;
}

int cmd_run(const MatchFlags& f, const std::string& out_dir) {
  const auto g = resolve(f);
  auto agents = make_agents(g.base, g.agent);
  ProxyTrainer trainer(g.proxy);
  const auto records = run_suite(g.base, agents, trainer);

  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "records.ndjson", records_to_ndjson(records));
  std::ofstream csv(fs::path(out_dir) / "summary.csv");
  write_suite_summary_csv(csv, records);

  std::printf("design=%s code=%s seed=%llu\n", std::string(to_string(g.base.design)).c_str(),
              std::string(to_string(g.base.social_code)).c_str(),
              static_cast<unsigned long long>(g.base.seed));
  for (const auto& r : records) {
    std::printf("game %2d  rows %4d  actions %4d  permissible %6.2f%%  end %s\n",
                r.game_index + 1, r.totals.rows_cleared, r.totals.actions,
                r.pct_permissible(), std::string(to_string(r.end)).c_str());
  }
  return 0;
}

int cmd_grid(const std::string& config, const std::string& out_dir, int workers) {
  auto g = base_grid(config);
  if (workers > 0) g.workers = workers;
  validate(g);
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = run_grid(g);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(out_dir);
  {
    std::ofstream m(fs::path(out_dir) / "metrics.csv");
    write_metrics_csv(m, table);
    std::ofstream a(fs::path(out_dir) / "aggregate.csv");
    write_aggregate_csv(a, aggregate_over_seeds(table));
  }
  for (auto code : g.codes) {
    write_file(fs::path(out_dir) / ("curves_" + std::string(to_string(code)) + ".svg"),
               render_curves_svg(table, code));
  }

  std::printf("%-8s %-9s %12s %14s\n", "code", "design", "rows/game", "permissible%");
  for (auto code : g.codes) {
    for (auto d : g.designs) {
      const auto s = suite_aggregate(table, d, code);
      std::printf("%-8s %-9s %12.2f %14.2f\n", std::string(to_string(code)).c_str(),
                  std::string(to_string(d)).c_str(), s.rows_per_game, s.pct_permissible);
    }
  }
  for (const auto& f : table.failures) {
    std::fprintf(stderr, "failed: %s/%s seed %llu: %s\n",
                 std::string(to_string(f.design)).c_str(),
                 std::string(to_string(f.code)).c_str(),
                 static_cast<unsigned long long>(f.seed), f.error.c_str());
  }
  std::printf("%zu suites in %.1fs, output in %s\n",
              g.designs.size() * g.codes.size() * g.seeds.size(), secs, out_dir.c_str());
  return table.failures.empty() ? 0 : 1;
}

int cmd_bound(const MatchFlags& f) {
  const auto g = resolve(f);
  const auto bound = compute_upper_bound(g.base, g.proxy);
  std::printf("game,upperBoundRows\n");
  for (std::size_t i = 0; i < bound.size(); ++i) std::printf("%zu,%d\n", i + 1, bound[i]);
  return 0;
}

int cmd_replay(const std::string& path) {
  const auto report = replay(read_records_file(path));
  std::printf("games %d  actions %d  rows %d  permissible %d\n", report.games,
              report.actions, report.rows_cleared, report.permissible_actions);
  for (const auto& m : report.mismatches) std::printf("mismatch: %s\n", m.c_str());
  std::printf("%s\n", report.ok() ? "replay OK" : "replay FAILED");
  return report.ok() ? 0 : 1;
}

int cmd_serve(const MatchFlags& f, const std::string& address, int port,
              int feedback_timeout_ms, int idle_timeout_s, const std::string& records) {
  const auto g = resolve(f);
  gateway::ServerOptions opts;
  opts.address = address;
  opts.port = static_cast<unsigned short>(port);
  opts.match = g.base;
  opts.agent = g.agent;
  if (feedback_timeout_ms > 0) {
    opts.session.feedback_timeout = std::chrono::milliseconds(feedback_timeout_ms);
  }
  opts.session.idle_timeout = std::chrono::seconds(idle_timeout_s);
  opts.session.records_path = records;
  gateway::Server server(opts);
  server.start();
  std::printf("listening on ws://%s:%u\n", address.c_str(), server.port());
  std::fflush(stdout);
  std::signal(SIGINT, [](int) { g_interrupted = true; });
  std::signal(SIGTERM, [](int) { g_interrupted = true; });
  while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STAR agents in Multiagent Tetris"};
  app.require_subcommand(1);

  MatchFlags run_flags;
  std::string run_out = "out";
  auto* run = app.add_subcommand("run", "play one suite with the scripted trainer");
  add_match_flags(run, run_flags);
  run->add_option("--out", run_out, "output directory");

  std::string grid_config, grid_out = "grid_out";
  int grid_workers = 0;
  auto* grid = app.add_subcommand("grid", "all designs x codes on identical suites");
  grid->add_option("--config", grid_config, "JSON experiment file")->check(CLI::ExistingFile);
  grid->add_option("--out", grid_out, "output directory");
  grid->add_option("--workers", grid_workers, "worker threads");

  MatchFlags bound_flags;
  auto* bound = app.add_subcommand("bound", "rows cleared by the permissible-only oracle");
  add_match_flags(bound, bound_flags);

  std::string replay_path;
  auto* rep = app.add_subcommand("replay", "re-apply a record file and check its hashes");
  rep->add_option("file", replay_path, "NDJSON record file")->required()->check(CLI::ExistingFile);

  MatchFlags serve_flags;
  std::string address = "127.0.0.1", serve_records;
  int port = 8765, feedback_timeout_ms = 0, idle_timeout_s = 1800;
  auto* serve = app.add_subcommand("serve", "websocket gateway for live trainers");
  add_match_flags(serve, serve_flags);
  serve->add_option("--address", address);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--feedback-timeout-ms", feedback_timeout_ms,
                    "advance without feedback after this long, 0 waits");
  serve->add_option("--idle-timeout-s", idle_timeout_s)->check(CLI::PositiveNumber);
  serve->add_option("--records", serve_records, "write session records here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_flags, run_out);
    if (*grid) return cmd_grid(grid_config, grid_out, grid_workers);
    if (*bound) return cmd_bound(bound_flags);
    if (*rep) return cmd_replay(replay_path);
    if (*serve) {
      return cmd_serve(serve_flags, address, port, feedback_timeout_ms, idle_timeout_s,
                       serve_records);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
