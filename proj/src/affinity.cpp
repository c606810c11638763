#include "star/affinity.hpp"

#include <string>

#include "star/errors.hpp"

namespace star {
namespace {

void check_weight(int w) {
  if (w < PreferenceMatrix::kMinWeight || w > PreferenceMatrix::kMaxWeight) {
    throw ConfigError("preference weight " + std::to_string(w) +
                      " outside [-2, 2]");
  }
}

}  // namespace

PreferenceMatrix::PreferenceMatrix(const PairVector<int>& weights)
    : weights_(weights) {
  for (int i = 0; i < kNumColorPairs; ++i) check_weight(weights_(i));
}

PreferenceMatrix::PreferenceMatrix(
    std::initializer_list<std::pair<std::pair<Color, Color>, int>> entries)
    : PreferenceMatrix() {
  for (const auto& [pair, w] : entries) set_weight(pair.first, pair.second, w);
}

void PreferenceMatrix::set_weight(Color a, Color b, int w) {
  check_weight(w);
  weights_(pair_index(a, b)) = w;
}

PairCounts pair_counts(const Board& board) {
  PairCounts counts = PairCounts::Zero();
  const auto& g = board.cells();
  for (int r = 0; r < board.height(); ++r) {
    for (int c = 0; c < board.width(); ++c) {
      const auto v = g(r, c);
      if (v == 0) continue;
      if (c + 1 < board.width() && g(r, c + 1) != 0) {
        ++counts(pair_index(static_cast<Color>(v), static_cast<Color>(g(r, c + 1))));
      }
      if (r + 1 < board.height() && g(r + 1, c) != 0) {
        ++counts(pair_index(static_cast<Color>(v), static_cast<Color>(g(r + 1, c))));
      }
    }
  }
  return counts;
}

AffinityScore affinity(const Board& board, const PreferenceMatrix& prefs) {
  return {pair_counts(board).dot(prefs.weights())};
}

int adjacency_edges(const Board& board) {
  const auto filled = (board.cells() != 0).cast<int>();
  const int w = board.width(), h = board.height();
  const int horizontal =
      (filled.leftCols(w - 1) * filled.rightCols(w - 1)).sum();
  const int vertical = (filled.topRows(h - 1) * filled.bottomRows(h - 1)).sum();
  return horizontal + vertical;
}

PreferenceMatrix reference_preferences(int agent) {
  using enum Color;
  switch (agent) {
    case 0: return {{{Red, Green}, 1}, {{Green, Blue}, 2}, {{Red, Blue}, -1}};
    case 1: return {{{Green, Blue}, 1}, {{Red, Blue}, 2}, {{Red, Green}, -2}};
    default:
      throw ConfigError("reference preferences exist for agents 0 and 1 only");
  }
}

}  // namespace star
