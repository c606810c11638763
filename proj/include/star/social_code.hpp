#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "star/affinity.hpp"
#include "star/placement.hpp"

namespace star {

enum class SocialCodeKind { Global, Simple };

std::string_view to_string(SocialCodeKind kind);
SocialCodeKind parse_social_code(std::string_view name);

using AgentId = int;

struct TeamMember {
  AgentId id;
  PreferenceMatrix prefs;
};

class TeamProfile {
 public:
  TeamProfile() = default;
  explicit TeamProfile(std::vector<TeamMember> members);

  const std::vector<TeamMember>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(AgentId id) const;
  const PreferenceMatrix& prefs(AgentId id) const;

  // Sum of every member's weights.
  PairVector<int> summed_weights() const;

  // Two agents with the reference three-color preferences, ids 0 and 1.
  static TeamProfile reference();

 private:
  std::vector<TeamMember> members_;
};

struct JudgeOptions {
  // Whether the acting agent's own affinity change counts toward the
  // Global team delta.
  bool global_includes_actor = true;
};

struct PermissibilityVerdict {
  bool permissible = true;
  int delta = 0;
  std::map<AgentId, int> per_agent_deltas;
};

// Ground-truth social function. `before` and `after` are the settled boards
// around one action. Throws UnknownAgent when `acting` is not on the team.
PermissibilityVerdict judge(SocialCodeKind kind, const TeamProfile& team,
                            AgentId acting, const Board& before,
                            const Board& after, JudgeOptions options = {});

// Verdict from already-known per-agent affinity deltas.
PermissibilityVerdict judge_deltas(SocialCodeKind kind,
                                   const std::map<AgentId, int>& deltas,
                                   AgentId acting, JudgeOptions options = {});

// Change in pair counts caused by dropping `piece` at `a`, including edges
// removed and joined by row clears. Touches only the landed cells and
// cleared rows.
PairCounts pair_count_delta(const Board& before, const Piece& piece,
                            PlacementAction a);

// Per-agent affinity change of a placement, without recomputing affinity on
// either full board. Throws IllegalPlacement.
std::map<AgentId, int> delta_incremental(const TeamProfile& team,
                                         const Board& before,
                                         const Piece& piece, PlacementAction a);

// How far a verdict is from permissible; 0 iff permissible. Global: the
// deficit of the team delta. Simple: total loss over non-acting agents.
int harm(SocialCodeKind kind, const PermissibilityVerdict& verdict,
         AgentId acting);

}  // namespace star
