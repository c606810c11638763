#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "star/agent.hpp"
#include "star/errors.hpp"
#include "support.hpp"

using namespace star;
using enum Color;

namespace {

constexpr int W = 6, H = 8;

StarAgent make(DesignKind d = DesignKind::Parallel, AgentConfig c = {}) {
  return StarAgent(0, c, d, W, H);
}

// Logit k * (team weights . delta + 1/2): exact Global ground truth.
void install_global_oracle(StarAgent& a, const TeamProfile& team) {
  Vector<double> p(kNumColorPairs + 1);
  p.head(kNumColorPairs) = 10.0 * team.summed_weights().cast<double>();
  p(kNumColorPairs) = 5.0;
  a.social_model().set_parameters(p);
}

void random_effectiveness(StarAgent& a, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Vector<double> p(a.effectiveness_model().dim() + 1);
  for (auto& v : p) v = n(rng);
  a.effectiveness_model().set_parameters(p);
}

FeedbackContext pending_ctx(const Board& b, const Piece& p, PlacementAction a) {
  return {0, StateRef{b, p}, a};
}

}  // namespace

TEST_CASE("untrained agent takes the first placement in enumeration order") {
  auto a = make();
  const Board b(W, H);
  const Piece p{Shape::T, Red};
  const auto s = a.select_action(b, p);
  CHECK(s.action == legal_placements(b, p).front());
  CHECK(s.audit.rank == 1);
  CHECK_FALSE(s.audit.fallback);
  CHECK(s.social_output == 0.5);
  CHECK(a.predict_permissible(b, p, legal_placements(b, p).back()));
}

TEST_CASE("filter skips the top-ranked placement it rejects") {
  auto a = make();
  Board b(W, H);
  b.set(7, 0, Blue);
  // Prefer raising column 0, then column 3.
  Vector<double> ew = Vector<double>::Zero(W + 4 + 1);
  ew(0) = 1.0;
  ew(3) = 0.6;
  a.effectiveness_model().set_parameters(ew);
  // Reject any red-blue contact.
  Vector<double> sw = Vector<double>::Zero(kNumColorPairs + 1);
  sw(pair_index(Red, Blue)) = -5.0;
  sw(kNumColorPairs) = 1.0;
  a.social_model().set_parameters(sw);

  const Piece o{Shape::O, Red};
  const auto s = a.select_action(b, o);
  CHECK(s.action == PlacementAction{0, 2});
  CHECK(s.audit.rank == 2);
  REQUIRE(s.audit.examined.size() == 2);
  CHECK(s.audit.examined[0].action == PlacementAction{0, 0});
  CHECK_FALSE(s.audit.examined[0].passed);
  CHECK(s.audit.examined[1].passed);
}

TEST_CASE("fallback picks the highest social output when nothing passes") {
  // Green surface: every red O touches green, which the second reference
  // agent strongly dislikes, and none completes a row.
  Board b(4, 6);
  for (int c = 0; c < 3; ++c) b.set(5, c, Green);
  b.set(4, 3, Green);
  const auto team = TeamProfile::reference();
  const Piece p{Shape::O, Red};
  REQUIRE(legal_placements(b, p).size() == 3);
  for (auto act : legal_placements(b, p)) {
    const auto res = apply_placement(b, p, act);
    CHECK(res.rows_cleared == 0);
    CHECK_FALSE(judge(SocialCodeKind::Simple, team, 0, b, res.board).permissible);
  }

  AgentConfig c;
  c.decision_threshold = 1.0;
  StarAgent a(0, c, DesignKind::Parallel, 4, 6);
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n(0, 1);
  Vector<double> sp(kNumColorPairs + 1);
  for (auto& v : sp) v = n(rng);
  a.social_model().set_parameters(sp);

  const auto sel = a.select_action(b, p);
  CHECK(sel.audit.fallback);
  double best = -1;
  for (auto act : legal_placements(b, p)) best = std::max(best, a.social_output(b, p, act));
  CHECK(sel.social_output == best);
  CHECK(sel.audit.examined.size() == legal_placements(b, p).size());
}

TEST_CASE("designs without a filter take the effectiveness argmax") {
  std::mt19937_64 rng(42);
  for (auto d : {DesignKind::EffectivenessAlone, DesignKind::Blended}) {
    auto a = make(d);
    random_effectiveness(a, rng);
    a.social_model().set_threshold(1.0);
    const auto b = test::random_board(rng, W, H);
    const Piece p{Shape::S, Green};
    const auto s = a.select_action(b, p);
    CHECK_FALSE(s.audit.filter_active);
    CHECK_FALSE(s.audit.fallback);
    for (auto act : legal_placements(b, p)) {
      CHECK(a.predict_effectiveness(b, p, act) <= s.effectiveness + 1e-12);
    }
  }
}

TEST_CASE("selection is invariant under positive affine rescaling of effectiveness") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> n(0, 1);
  for (int t = 0; t < 100; ++t) {
    auto a = make();
    random_effectiveness(a, rng);
    Vector<double> sp(kNumColorPairs + 1);
    for (auto& v : sp) v = n(rng);
    a.social_model().set_parameters(sp);
    auto scaled = make();
    const double k = 0.1 + std::abs(n(rng)) * 5;
    Vector<double> p = a.effectiveness_model().parameters() * k;
    p(p.size() - 1) += n(rng);
    scaled.effectiveness_model().set_parameters(p);
    scaled.social_model().set_parameters(sp);
    const auto b = test::random_board(rng, W, H);
    const Piece piece{kShapes[rng() % 7], kColors[rng() % 3]};
    if (legal_placements(b, piece).empty()) continue;
    CHECK(a.select_action(b, piece).action == scaled.select_action(b, piece).action);
  }
}

TEST_CASE("an exact global model never picks an unacceptable placement when one is permissible") {
  const auto team = TeamProfile::reference();
  std::mt19937_64 rng(44);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    auto a = make();
    random_effectiveness(a, rng);
    install_global_oracle(a, team);
    const auto b = test::random_board(rng, W, H, 0.5);
    for (auto s : kShapes) {
      const Piece p{s, kColors[rng() % 3]};
      const auto acts = legal_placements(b, p);
      bool any = false;
      for (auto act : acts) {
        any |= judge(SocialCodeKind::Global, team, 0, b, apply_placement(b, p, act).board).permissible;
      }
      if (!any) continue;
      const auto sel = a.select_action(b, p);
      CHECK(judge(SocialCodeKind::Global, team, 0, b, apply_placement(b, p, sel.action).board)
                .permissible);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("feedback touches only the model of its channel") {
  const Board b(W, H);
  const Piece p{Shape::J, Blue};
  for (auto d : kDesigns) {
    auto a = make(d);
    const auto s = a.select_action(b, p);
    const auto e0 = a.effectiveness_model().parameters();
    const auto s0 = a.social_model().parameters();
    a.ingest_feedback(FeedbackEvent::social(pending_ctx(b, p, s.action), SocialLabel::Unacceptable));
    CHECK((a.effectiveness_model().parameters() == e0));
    CHECK((a.social_model().parameters() == s0) == !social_channel_open(d));
    const auto s1 = a.social_model().parameters();
    a.ingest_feedback(FeedbackEvent::effectiveness(pending_ctx(b, p, s.action), -1));
    CHECK((a.social_model().parameters() == s1));
    CHECK((a.effectiveness_model().parameters() == e0) == !effectiveness_channel_open(d));
  }
}

TEST_CASE("stale feedback is rejected") {
  auto a = make();
  const Board b(W, H);
  const Piece p{Shape::I, Red};
  CHECK_THROWS_AS(a.ingest_feedback(FeedbackEvent::effectiveness(pending_ctx(b, p, {0, 0}), 1)),
                  StaleFeedback);
  const auto s = a.select_action(b, p);
  const PlacementAction other{s.action.rotation, s.action.column + 1};
  CHECK_THROWS_AS(a.ingest_feedback(FeedbackEvent::effectiveness(pending_ctx(b, p, other), 1)),
                  StaleFeedback);
  FeedbackContext wrong_agent = pending_ctx(b, p, s.action);
  wrong_agent.agent = 5;
  CHECK_THROWS_AS(a.ingest_feedback(FeedbackEvent::effectiveness(wrong_agent, 1)), StaleFeedback);
  a.ingest_feedback(FeedbackEvent::effectiveness(pending_ctx(b, p, s.action), 1));
}

TEST_CASE("social labels are replayed from history") {
  AgentConfig c;
  auto a = make(DesignKind::Parallel, c);
  c.social_replay_passes = 0;
  auto plain = make(DesignKind::Parallel, c);
  std::mt19937_64 rng(45);
  for (int t = 0; t < 5; ++t) {
    const auto b = test::random_board(rng, W, H);
    const Piece p{Shape::T, kColors[t % 3]};
    for (auto* ag : {&a, &plain}) {
      const auto s = ag->select_action(b, p);
      ag->ingest_feedback(FeedbackEvent::social(pending_ctx(b, p, s.action),
                                                t % 2 ? SocialLabel::Permissible
                                                      : SocialLabel::Unacceptable));
    }
  }
  CHECK(a.social_history_size() == 5);
  CHECK(plain.social_history_size() == 0);
  CHECK_FALSE((a.social_model().parameters() == plain.social_model().parameters()));
  AgentConfig bad;
  bad.social_replay_passes = -1;
  CHECK_THROWS_AS(make(DesignKind::Parallel, bad), ConfigError);
}

TEST_CASE("checkpoint round trip") {
  std::mt19937_64 rng(46);
  auto a = make();
  for (int t = 0; t < 6; ++t) {
    const auto b = test::random_board(rng, W, H);
    const Piece p{Shape::Z, Green};
    const auto s = a.select_action(b, p);
    a.ingest_feedback(FeedbackEvent::effectiveness(pending_ctx(b, p, s.action), t % 2 ? 1 : -1));
    a.ingest_feedback(FeedbackEvent::social(pending_ctx(b, p, s.action), SocialLabel::Unacceptable));
  }
  const auto cp = a.checkpoint();
  auto b = make();
  b.restore(nlohmann::json::parse(cp.dump()));
  CHECK((b.effectiveness_model().parameters() == a.effectiveness_model().parameters()));
  CHECK((b.social_model().parameters() == a.social_model().parameters()));
  CHECK(b.social_history_size() == a.social_history_size());
  CHECK(b.checkpoint() == cp);

  AgentConfig other;
  other.social_learning_rate = 0.5;
  auto c = make(DesignKind::Parallel, other);
  CHECK_THROWS_AS(c.restore(cp), ConfigError);
  auto blended = make(DesignKind::Blended);
  CHECK_THROWS_AS(blended.restore(cp), ConfigError);
}

TEST_CASE("terminal state raises NoLegalAction") {
  Board b(W, H);
  for (int c = 0; c < W; ++c) b.set(0, c, Red);
  auto a = make();
  CHECK_THROWS_AS(a.select_action(b, Piece{Shape::O, Red}), NoLegalAction);
}
