#include "star/proxy.hpp"

#include <algorithm>

#include "star/errors.hpp"

namespace star {

double eval_score(const ProxyPolicy& policy, const Candidate& c) {
  return policy.aggregate_height * c.stats.aggregate_height +
         policy.holes * c.stats.holes + policy.bumpiness * c.stats.bumpiness +
         policy.rows_cleared * c.result.rows_cleared;
}

std::size_t best_candidate(const ProxyPolicy& policy,
                           const std::vector<Candidate>& candidates) {
  std::size_t best = 0;
  double best_score = eval_score(policy, candidates.at(0));
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = eval_score(policy, candidates[i]);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

RawTrainerSignal proxy_signal(const ProxyPolicy& policy, SocialCodeKind code,
                              const TeamProfile& team, AgentId acting,
                              const Board& before, const Piece& piece,
                              PlacementAction chosen, JudgeOptions options) {
  const auto candidates = enumerate_candidates(before, piece);
  const auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const Candidate& c) { return c.action == chosen; });
  if (it == candidates.end()) {
    throw IllegalPlacement("proxy asked to judge an illegal placement");
  }
  double best = eval_score(policy, candidates.front());
  for (const auto& c : candidates) best = std::max(best, eval_score(policy, c));

  RawTrainerSignal s;
  s.effectiveness = eval_score(policy, *it) >= best - policy.approval_margin ? 1 : -1;
  const auto verdict = judge(code, team, acting, before, it->result.board, options);
  s.social = verdict.permissible ? SocialLabel::Permissible : SocialLabel::Unacceptable;
  return s;
}

}  // namespace star
