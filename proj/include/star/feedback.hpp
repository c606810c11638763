#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "star/board.hpp"
#include "star/placement.hpp"
#include "star/social_code.hpp"

namespace star {

enum class DesignKind { Parallel, EffectivenessAlone, SocialAlone, Blended };

inline constexpr std::array<DesignKind, 4> kDesigns = {
    DesignKind::Parallel, DesignKind::EffectivenessAlone,
    DesignKind::SocialAlone, DesignKind::Blended};

// CLI names: parallel, effect, social, blended.
std::string_view to_string(DesignKind d);
DesignKind parse_design(std::string_view name);

// Whether the agent's social filter takes part in action selection.
constexpr bool filter_active(DesignKind d) {
  return d == DesignKind::Parallel || d == DesignKind::SocialAlone;
}
constexpr bool effectiveness_channel_open(DesignKind d) {
  return d != DesignKind::SocialAlone;
}
constexpr bool social_channel_open(DesignKind d) {
  return d == DesignKind::Parallel || d == DesignKind::SocialAlone;
}

enum class Channel { Effectiveness, Social };
enum class SocialLabel { Permissible, Unacceptable };

std::string_view to_string(Channel c);
std::string_view to_string(SocialLabel l);
SocialLabel parse_social_label(std::string_view name);

struct StateRef {
  Board board;
  Piece piece;
};

struct FeedbackContext {
  AgentId agent = 0;
  StateRef state;
  PlacementAction action;
};

// Channel-tagged human signal bound to (agent, state, action). The value
// domain is checked at construction: effectiveness events carry -1 or +1,
// social events carry a SocialLabel.
class FeedbackEvent {
 public:
  static FeedbackEvent effectiveness(FeedbackContext ctx, int value);
  static FeedbackEvent social(FeedbackContext ctx, SocialLabel label);

  const FeedbackContext& context() const { return ctx_; }
  AgentId agent() const { return ctx_.agent; }
  Channel channel() const { return channel_; }
  int effectiveness_value() const;
  SocialLabel social_label() const;

 private:
  FeedbackEvent(FeedbackContext ctx, Channel ch, int eff, SocialLabel soc)
      : ctx_(std::move(ctx)), channel_(ch), effectiveness_(eff), social_(soc) {}

  FeedbackContext ctx_;
  Channel channel_;
  int effectiveness_;
  SocialLabel social_;
};

// Both signals, as produced by the proxy trainer for every action.
struct RawTrainerSignal {
  int effectiveness = 1;  // -1 or +1
  SocialLabel social = SocialLabel::Permissible;
  bool operator==(const RawTrainerSignal&) const = default;
};

// A live trainer may leave either channel unanswered.
struct TrainerSignal {
  std::optional<int> effectiveness;
  std::optional<SocialLabel> social;

  TrainerSignal() = default;
  TrainerSignal(const RawTrainerSignal& raw)  // NOLINT: implicit by intent
      : effectiveness(raw.effectiveness), social(raw.social) {}
  TrainerSignal(std::optional<int> e, std::optional<SocialLabel> s)
      : effectiveness(e), social(s) {}
  bool operator==(const TrainerSignal&) const = default;
};

// Events each design delivers for one complete trainer signal.
//   Parallel:           effectiveness event and social event
//   EffectivenessAlone: effectiveness event
//   SocialAlone:        social event
//   Blended:            one effectiveness event, +1 only when the action was
//                       both effective and permissible
std::vector<FeedbackEvent> route(DesignKind design, const RawTrainerSignal& raw,
                                 const FeedbackContext& ctx);

// Routing with absent channels: an absent channel yields no event. Blended
// emits -1 as soon as either present signal is negative, +1 only when both
// are present and positive, and nothing otherwise.
std::vector<FeedbackEvent> route(DesignKind design, const TrainerSignal& signal,
                                 const FeedbackContext& ctx);

}  // namespace star
