#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "star/errors.hpp"
#include "star/experiment.hpp"
#include "support.hpp"

using namespace star;
using enum Color;

namespace {

double brute_eval(const ProxyPolicy& p, const Board& after, int rows) {
  int agg = 0, holes = 0, bump = 0;
  std::vector<int> h(after.width());
  for (int c = 0; c < after.width(); ++c) {
    int top = after.height();
    for (int r = 0; r < after.height(); ++r) {
      if (after.filled(r, c)) {
        top = r;
        break;
      }
    }
    h[c] = after.height() - top;
    agg += h[c];
    for (int r = top + 1; r < after.height(); ++r) holes += !after.filled(r, c);
  }
  for (int c = 0; c + 1 < after.width(); ++c) bump += std::abs(h[c] - h[c + 1]);
  return p.aggregate_height * agg + p.holes * holes + p.bumpiness * bump + p.rows_cleared * rows;
}

// Test-only player: tries every pair of placements for the current and the
// next piece, maximizing rows cleared over both, then the proxy evaluation.
int lookahead_rows(const MatchConfig& cfg, int game, const ProxyPolicy& pol, int pieces) {
  PieceStream stream(cfg, game);
  std::vector<Piece> seq;
  for (int i = 0; i < pieces + 1; ++i) seq.push_back(*stream.next());
  Board b(cfg.board_width, cfg.board_height);
  int rows = 0;
  for (int i = 0; i < pieces; ++i) {
    const auto first = enumerate_candidates(b, seq[i]);
    if (first.empty()) break;
    std::size_t best = 0;
    std::pair<int, double> best_key{-1, 0};
    for (std::size_t k = 0; k < first.size(); ++k) {
      std::pair<int, double> key{first[k].result.rows_cleared, -1e18};
      for (const auto& c2 : enumerate_candidates(first[k].result.board, seq[i + 1])) {
        const std::pair<int, double> k2{first[k].result.rows_cleared + c2.result.rows_cleared,
                                        eval_score(pol, c2)};
        key = std::max(key, k2);
      }
      if (best_key.first < 0 || key > best_key) {
        best_key = key;
        best = k;
      }
    }
    rows += first[best].result.rows_cleared;
    b = first[best].result.board;
  }
  return rows;
}

int greedy_rows(const MatchConfig& cfg, int game, const ProxyPolicy& pol, int pieces) {
  PieceStream stream(cfg, game);
  Board b(cfg.board_width, cfg.board_height);
  int rows = 0;
  for (int i = 0; i < pieces; ++i) {
    const auto cs = enumerate_candidates(b, *stream.next());
    if (cs.empty()) break;
    const auto& c = cs[best_candidate(pol, cs)];
    rows += c.result.rows_cleared;
    b = c.result.board;
  }
  return rows;
}

}  // namespace

TEST_CASE("evaluation matches a direct board scan") {
  const ProxyPolicy pol;
  std::mt19937_64 rng(51);
  for (int t = 0; t < 60; ++t) {
    const auto b = test::random_board(rng, 6, 8);
    for (const auto& c : enumerate_candidates(b, Piece{kShapes[t % 7], Red})) {
      CHECK(eval_score(pol, c) ==
            doctest::Approx(brute_eval(pol, c.result.board, c.result.rows_cleared)));
    }
  }
}

TEST_CASE("the best placement is approved and the worst is not") {
  const ProxyPolicy pol;
  const auto team = TeamProfile::reference();
  Board b(6, 8);
  for (int c = 0; c < 5; ++c) b.set(7, c, Green);
  const Piece p{Shape::I, Green};
  const auto cs = enumerate_candidates(b, p);
  const auto best = best_candidate(pol, cs);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (eval_score(pol, cs[i]) < eval_score(pol, cs[worst])) worst = i;
  }
  REQUIRE(eval_score(pol, cs[best]) - eval_score(pol, cs[worst]) > pol.approval_margin);
  CHECK(proxy_signal(pol, SocialCodeKind::Global, team, 0, b, p, cs[best].action).effectiveness == 1);
  CHECK(proxy_signal(pol, SocialCodeKind::Global, team, 0, b, p, cs[worst].action).effectiveness == -1);
}

TEST_CASE("approval margin widens the accepted set") {
  std::mt19937_64 rng(52);
  for (double m : {0.0, 0.5, 2.0}) {
    ProxyPolicy pol;
    pol.approval_margin = m;
    const auto b = test::random_board(rng, 6, 8);
    const Piece p{Shape::T, Blue};
    const auto cs = enumerate_candidates(b, p);
    double best = -1e18;
    for (const auto& c : cs) best = std::max(best, eval_score(pol, c));
    for (const auto& c : cs) {
      const auto s = proxy_signal(pol, SocialCodeKind::Global, TeamProfile::reference(), 0, b, p, c.action);
      CHECK((s.effectiveness == 1) == (eval_score(pol, c) >= best - m));
    }
  }
}

TEST_CASE("harmful placement is unacceptable regardless of effectiveness") {
  Board b(6, 8);
  for (int c = 0; c < 5; ++c) b.set(7, c, Green);
  const Piece p{Shape::I, Red};
  const auto team = TeamProfile::reference();
  // The flat I on the green row touches green from above and clears nothing.
  const auto s = proxy_signal(ProxyPolicy{}, SocialCodeKind::Simple, team, 0, b, p, {0, 0});
  CHECK(s.social == SocialLabel::Unacceptable);
  CHECK_THROWS_AS(proxy_signal(ProxyPolicy{}, SocialCodeKind::Simple, team, 0, b, p, {0, 9}),
                  IllegalPlacement);
}

TEST_CASE("proxy social label is the judge's verdict") {
  const auto team = TeamProfile::reference();
  std::mt19937_64 rng(53);
  for (int t = 0; t < 80; ++t) {
    const auto b = test::random_board(rng, 6, 8);
    const Piece p{kShapes[t % 7], kColors[t % 3]};
    for (auto code : {SocialCodeKind::Global, SocialCodeKind::Simple}) {
      for (auto a : legal_placements(b, p)) {
        const AgentId actor = t % 2;
        const auto s = proxy_signal(ProxyPolicy{}, code, team, actor, b, p, a);
        const bool ok = judge(code, team, actor, b, apply_placement(b, p, a).board).permissible;
        CHECK((s.social == SocialLabel::Permissible) == ok);
        CHECK((s.effectiveness == 1 || s.effectiveness == -1));
      }
    }
  }
}

TEST_CASE("lookahead beats the greedy proxy somewhere") {
  MatchConfig cfg;
  const ProxyPolicy pol;
  int better = 0;
  for (int g = 0; g < 10 && better == 0; ++g) {
    better += lookahead_rows(cfg, g, pol, 40) > greedy_rows(cfg, g, pol, 40);
  }
  CHECK(better > 0);
}
