#pragma once

#include <initializer_list>
#include <utility>

#include "star/board.hpp"
#include "star/color.hpp"

namespace star {

// Per-agent weights over unordered color pairs, each in [-2, 2]. A weight of
// +/-2 marks a strong preference.
class PreferenceMatrix {
 public:
  static constexpr int kMinWeight = -2;
  static constexpr int kMaxWeight = 2;

  PreferenceMatrix() : weights_(PairVector<int>::Zero()) {}
  explicit PreferenceMatrix(const PairVector<int>& weights);
  PreferenceMatrix(std::initializer_list<std::pair<std::pair<Color, Color>, int>> entries);

  int weight(Color a, Color b) const { return weights_(pair_index(a, b)); }
  void set_weight(Color a, Color b, int w);

  const PairVector<int>& weights() const { return weights_; }

  bool operator==(const PreferenceMatrix& o) const { return weights_ == o.weights_; }

 private:
  PairVector<int> weights_;
};

struct AffinityScore {
  int value = 0;
  auto operator<=>(const AffinityScore&) const = default;
};

// Each 4-adjacency edge between two filled cells, counted once per
// unordered color pair.
PairCounts pair_counts(const Board& board);

AffinityScore affinity(const Board& board, const PreferenceMatrix& prefs);

// Number of 4-adjacency edges between filled cells.
int adjacency_edges(const Board& board);

// The two agents of the three-color experiment: agent 0 likes red-green,
// strongly likes green-blue, dislikes red-blue; agent 1 likes green-blue,
// strongly likes red-blue, strongly dislikes red-green.
PreferenceMatrix reference_preferences(int agent);

}  // namespace star
