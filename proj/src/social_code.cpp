#include "star/social_code.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "star/errors.hpp"

namespace star {

std::string_view to_string(SocialCodeKind kind) {
  return kind == SocialCodeKind::Global ? "global" : "simple";
}

SocialCodeKind parse_social_code(std::string_view name) {
  if (name == "global") return SocialCodeKind::Global;
  if (name == "simple") return SocialCodeKind::Simple;
  throw ConfigError("unknown social code '" + std::string(name) + "'");
}

TeamProfile::TeamProfile(std::vector<TeamMember> members)
    : members_(std::move(members)) {
  std::set<AgentId> ids;
  for (const auto& m : members_) {
    if (!ids.insert(m.id).second) {
      throw ConfigError("duplicate agent id " + std::to_string(m.id));
    }
  }
}

bool TeamProfile::contains(AgentId id) const {
  return std::any_of(members_.begin(), members_.end(),
                     [id](const TeamMember& m) { return m.id == id; });
}

const PreferenceMatrix& TeamProfile::prefs(AgentId id) const {
  for (const auto& m : members_) {
    if (m.id == id) return m.prefs;
  }
  throw UnknownAgent("agent " + std::to_string(id) + " is not on the team");
}

PairVector<int> TeamProfile::summed_weights() const {
  PairVector<int> sum = PairVector<int>::Zero();
  for (const auto& m : members_) sum += m.prefs.weights();
  return sum;
}

TeamProfile TeamProfile::reference() {
  return TeamProfile({{0, reference_preferences(0)}, {1, reference_preferences(1)}});
}

PermissibilityVerdict judge_deltas(SocialCodeKind kind,
                                   const std::map<AgentId, int>& deltas,
                                   AgentId acting, JudgeOptions options) {
  if (!deltas.contains(acting)) {
    throw UnknownAgent("agent " + std::to_string(acting) + " is not on the team");
  }
  PermissibilityVerdict v;
  v.per_agent_deltas = deltas;
  for (const auto& [id, d] : deltas) {
    if (id != acting || options.global_includes_actor) v.delta += d;
  }
  if (kind == SocialCodeKind::Global) {
    v.permissible = v.delta >= 0;
  } else {
    v.permissible = std::all_of(deltas.begin(), deltas.end(), [&](const auto& kv) {
      return kv.first == acting || kv.second >= 0;
    });
  }
  return v;
}

PermissibilityVerdict judge(SocialCodeKind kind, const TeamProfile& team,
                            AgentId acting, const Board& before,
                            const Board& after, JudgeOptions options) {
  if (!team.contains(acting)) {
    throw UnknownAgent("agent " + std::to_string(acting) + " is not on the team");
  }
  std::map<AgentId, int> deltas;
  for (const auto& m : team.members()) {
    deltas[m.id] = affinity(after, m.prefs).value - affinity(before, m.prefs).value;
  }
  return judge_deltas(kind, deltas, acting, options);
}

PairCounts pair_count_delta(const Board& before, const Piece& piece,
                            PlacementAction a) {
  const auto top = resting_row(before, piece, a);
  if (!top) {
    throw IllegalPlacement("illegal placement (rotation " +
                           std::to_string(a.rotation) + ", column " +
                           std::to_string(a.column) + ")");
  }
  const auto& o = orientations(piece.shape)[static_cast<std::size_t>(a.rotation)];
  Board placed = before;
  std::array<Cell, 4> cells{};
  for (std::size_t i = 0; i < 4; ++i) {
    cells[i] = {*top + o.cells[i].row, a.column + o.cells[i].col};
    placed.set(cells[i].row, cells[i].col, piece.color);
  }
  const auto is_piece = [&cells](int r, int c) {
    return std::any_of(cells.begin(), cells.end(),
                       [&](const Cell& x) { return x.row == r && x.col == c; });
  };
  const auto color_at = [&placed](int r, int c) {
    return static_cast<Color>(placed.cells()(r, c));
  };

  PairCounts delta = PairCounts::Zero();
  static constexpr std::array<Cell, 4> kNeighbours = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (const auto& d : kNeighbours) {
      const int r = cells[i].row + d.row;
      const int c = cells[i].col + d.col;
      if (!placed.in_bounds(r, c) || !placed.filled(r, c)) continue;
      // Piece-piece edges are seen from both ends; count from the smaller.
      if (is_piece(r, c) && (r < cells[i].row || (r == cells[i].row && c < cells[i].col))) {
        continue;
      }
      ++delta(pair_index(piece.color, color_at(r, c)));
    }
  }

  std::vector<int> full_rows;
  for (int r = *top; r < *top + o.rows; ++r) {
    if (placed.row_full(r)) full_rows.push_back(r);
  }
  if (full_rows.empty()) return delta;

  const int w = placed.width();
  const auto full = [&full_rows](int r) {
    return std::find(full_rows.begin(), full_rows.end(), r) != full_rows.end();
  };
  for (int r : full_rows) {
    for (int c = 0; c + 1 < w; ++c) --delta(pair_index(color_at(r, c), color_at(r, c + 1)));
    for (int c = 0; c < w; ++c) {
      if (r > 0 && placed.filled(r - 1, c) && !full(r - 1)) {
        --delta(pair_index(color_at(r, c), color_at(r - 1, c)));
      }
      if (r + 1 < placed.height() && placed.filled(r + 1, c)) {
        --delta(pair_index(color_at(r, c), color_at(r + 1, c)));
      }
    }
  }
  // Rows on either side of each run of cleared rows become neighbours.
  for (std::size_t i = 0; i < full_rows.size(); ++i) {
    if (i > 0 && full_rows[i] == full_rows[i - 1] + 1) continue;
    std::size_t j = i;
    while (j + 1 < full_rows.size() && full_rows[j + 1] == full_rows[j] + 1) ++j;
    const int above = full_rows[i] - 1;
    const int below = full_rows[j] + 1;
    if (above < 0 || below >= placed.height()) continue;
    for (int c = 0; c < w; ++c) {
      if (placed.filled(above, c) && placed.filled(below, c)) {
        ++delta(pair_index(color_at(above, c), color_at(below, c)));
      }
    }
  }
  return delta;
}

std::map<AgentId, int> delta_incremental(const TeamProfile& team,
                                         const Board& before,
                                         const Piece& piece, PlacementAction a) {
  const PairCounts delta = pair_count_delta(before, piece, a);
  std::map<AgentId, int> out;
  for (const auto& m : team.members()) out[m.id] = delta.dot(m.prefs.weights());
  return out;
}

int harm(SocialCodeKind kind, const PermissibilityVerdict& verdict, AgentId acting) {
  if (kind == SocialCodeKind::Global) return std::max(0, -verdict.delta);
  int total = 0;
  for (const auto& [id, d] : verdict.per_agent_deltas) {
    if (id != acting && d < 0) total -= d;
  }
  return total;
}

}  // namespace star
