#pragma once

#include <vector>

#include "star/features.hpp"
#include "star/feedback.hpp"
#include "star/social_code.hpp"

namespace star {

// Fixed, deliberately simple effectiveness policy of the scripted trainer.
struct ProxyPolicy {
  double aggregate_height = -0.51;
  double holes = -0.36;
  double bumpiness = -0.18;
  double rows_cleared = 0.76;
  double approval_margin = 0.0;

  bool operator==(const ProxyPolicy&) const = default;
};

double eval_score(const ProxyPolicy& policy, const Candidate& c);

// Index of the best-scoring candidate; ties go to the earliest.
std::size_t best_candidate(const ProxyPolicy& policy,
                           const std::vector<Candidate>& candidates);

// Effectiveness is +1 when the chosen placement scores within the approval
// margin of the best legal placement. The social label is the ground-truth
// verdict. Throws IllegalPlacement.
RawTrainerSignal proxy_signal(const ProxyPolicy& policy, SocialCodeKind code,
                              const TeamProfile& team, AgentId acting,
                              const Board& before, const Piece& piece,
                              PlacementAction chosen, JudgeOptions options = {});

}  // namespace star
