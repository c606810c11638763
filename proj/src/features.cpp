#include "star/features.hpp"

#include "star/social_code.hpp"

namespace star {

BoardStats board_stats(const Board& board) {
  BoardStats s;
  const int w = board.width(), h = board.height();
  s.heights = Eigen::VectorXi::Zero(w);
  for (int c = 0; c < w; ++c) {
    bool seen = false;
    for (int r = 0; r < h; ++r) {
      if (board.filled(r, c)) {
        if (!seen) s.heights(c) = h - r;
        seen = true;
      } else if (seen) {
        ++s.holes;
      }
    }
  }
  s.aggregate_height = s.heights.sum();
  s.max_height = s.heights.maxCoeff();
  for (int c = 0; c + 1 < w; ++c) s.bumpiness += std::abs(s.heights(c) - s.heights(c + 1));
  return s;
}

Candidate evaluate_candidate(const Board& before, const Piece& piece,
                             PlacementAction a) {
  Candidate c{a, apply_placement(before, piece, a), {}, pair_count_delta(before, piece, a)};
  c.stats = board_stats(c.result.board);
  return c;
}

std::vector<Candidate> enumerate_candidates(const Board& before,
                                            const Piece& piece) {
  std::vector<Candidate> out;
  for (const auto& a : legal_placements(before, piece)) {
    out.push_back(evaluate_candidate(before, piece, a));
  }
  return out;
}

int effectiveness_feature_count(int board_width) { return board_width + 4; }

Eigen::VectorXd effectiveness_features(const Candidate& c, int board_width,
                                       int board_height) {
  const double h = board_height;
  Eigen::VectorXd x(effectiveness_feature_count(board_width));
  x.head(board_width) = c.stats.heights.cast<double>() / h;
  x(board_width) = c.stats.max_height / h;
  x(board_width + 1) = c.stats.holes / static_cast<double>(board_width);
  x(board_width + 2) = c.stats.bumpiness / h;
  x(board_width + 3) = c.result.rows_cleared / 4.0;
  return x;
}

std::vector<Eigen::VectorXd> centered_effectiveness_features(
    const std::vector<Candidate>& candidates, int board_width, int board_height) {
  std::vector<Eigen::VectorXd> xs;
  xs.reserve(candidates.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(effectiveness_feature_count(board_width));
  for (const auto& c : candidates) {
    xs.push_back(effectiveness_features(c, board_width, board_height));
    mean += xs.back();
  }
  if (xs.empty()) return xs;
  mean /= static_cast<double>(xs.size());
  for (auto& x : xs) x -= mean;
  return xs;
}

}  // namespace star
