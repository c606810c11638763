#pragma once

#include <array>
#include <map>
#include <random>
#include <vector>

#include "star/affinity.hpp"
#include "star/board.hpp"
#include "star/social_code.hpp"

namespace star::test {

// Gravity-free random fill: every cell independently empty or colored, with
// no full row left behind.
inline Board random_board(std::mt19937_64& rng, int width, int height, double fill = 0.45) {
  Board b(width, height);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> color(1, 3);
  for (int r = height / 3; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (u(rng) < fill) b.set(r, c, static_cast<Color>(color(rng)));
    }
    if (b.row_full(r)) b.set(r, static_cast<int>(rng() % width), std::nullopt);
  }
  return b;
}

// Counts every ordered (cell, neighbour) pair among the four directions and
// halves, keyed by sorted color names.
inline std::map<std::pair<int, int>, int> brute_pairs(const Board& b) {
  std::map<std::pair<int, int>, int> twice;
  const int dr[] = {-1, 1, 0, 0};
  const int dc[] = {0, 0, -1, 1};
  for (int r = 0; r < b.height(); ++r) {
    for (int c = 0; c < b.width(); ++c) {
      if (!b.filled(r, c)) continue;
      for (int k = 0; k < 4; ++k) {
        const int rr = r + dr[k], cc = c + dc[k];
        if (!b.in_bounds(rr, cc) || !b.filled(rr, cc)) continue;
        int x = static_cast<int>(*b.at(r, c)), y = static_cast<int>(*b.at(rr, cc));
        if (x > y) std::swap(x, y);
        ++twice[{x, y}];
      }
    }
  }
  for (auto& [k, v] : twice) v /= 2;
  return twice;
}

inline int brute_edges(const Board& b, Color x, Color y) {
  auto p = brute_pairs(b);
  int a = static_cast<int>(x), c = static_cast<int>(y);
  if (a > c) std::swap(a, c);
  const auto it = p.find({a, c});
  return it == p.end() ? 0 : it->second;
}

inline double brute_affinity(const Board& b, const PreferenceMatrix& prefs) {
  double total = 0;
  for (const auto& [k, n] : brute_pairs(b)) {
    total += n * prefs.weight(static_cast<Color>(k.first), static_cast<Color>(k.second));
  }
  return total;
}

// Per-agent affinity changes from two full boards.
inline std::map<AgentId, double> brute_deltas(const TeamProfile& team, const Board& before,
                                              const Board& after) {
  std::map<AgentId, double> d;
  for (const auto& m : team.members()) {
    d[m.id] = brute_affinity(after, m.prefs) - brute_affinity(before, m.prefs);
  }
  return d;
}

}  // namespace star::test
