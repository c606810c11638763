#pragma once

#include <vector>

#include <Eigen/Core>

#include "star/board.hpp"
#include "star/placement.hpp"

namespace star {

struct BoardStats {
  Eigen::VectorXi heights;
  int aggregate_height = 0;
  int max_height = 0;
  int holes = 0;      // empty cells with a filled cell somewhere above
  int bumpiness = 0;  // sum of |h[i] - h[i+1]|
};

BoardStats board_stats(const Board& board);

// Everything the learners and the proxy need about one candidate placement.
struct Candidate {
  PlacementAction action;
  PlacementResult result;
  BoardStats stats;
  PairCounts pair_delta;
};

Candidate evaluate_candidate(const Board& before, const Piece& piece,
                             PlacementAction a);
std::vector<Candidate> enumerate_candidates(const Board& before,
                                            const Piece& piece);

// Column heights, max height, holes, bumpiness, rows cleared; each scaled
// to roughly unit range by the board dimensions.
int effectiveness_feature_count(int board_width);
Eigen::VectorXd effectiveness_features(const Candidate& c, int board_width,
                                       int board_height);
// The same features minus their mean over the given candidate set.
std::vector<Eigen::VectorXd> centered_effectiveness_features(
    const std::vector<Candidate>& candidates, int board_width, int board_height);

// Pair-count changes as reals, one entry per unordered color pair.
inline PairVector<double> social_features(const Candidate& c) {
  return c.pair_delta.cast<double>();
}

}  // namespace star
