#include "star/feedback.hpp"

#include <string>

#include "star/errors.hpp"

namespace star {

std::string_view to_string(DesignKind d) {
  switch (d) {
    case DesignKind::Parallel: return "parallel";
    case DesignKind::EffectivenessAlone: return "effect";
    case DesignKind::SocialAlone: return "social";
    case DesignKind::Blended: return "blended";
  }
  return "?";
}

DesignKind parse_design(std::string_view name) {
  for (DesignKind d : kDesigns) {
    if (to_string(d) == name) return d;
  }
  throw ConfigError("unknown feedback design '" + std::string(name) + "'");
}

std::string_view to_string(Channel c) {
  return c == Channel::Effectiveness ? "effectiveness" : "social";
}

std::string_view to_string(SocialLabel l) {
  return l == SocialLabel::Permissible ? "permissible" : "unacceptable";
}

SocialLabel parse_social_label(std::string_view name) {
  if (name == "permissible") return SocialLabel::Permissible;
  if (name == "unacceptable") return SocialLabel::Unacceptable;
  throw ProtocolError("unknown social label '" + std::string(name) + "'");
}

FeedbackEvent FeedbackEvent::effectiveness(FeedbackContext ctx, int value) {
  if (value != -1 && value != 1) {
    throw std::invalid_argument("effectiveness feedback must be -1 or +1, got " +
                                std::to_string(value));
  }
  return {std::move(ctx), Channel::Effectiveness, value, SocialLabel::Permissible};
}

FeedbackEvent FeedbackEvent::social(FeedbackContext ctx, SocialLabel label) {
  return {std::move(ctx), Channel::Social, 0, label};
}

int FeedbackEvent::effectiveness_value() const {
  if (channel_ != Channel::Effectiveness) {
    throw std::logic_error("social event carries no effectiveness value");
  }
  return effectiveness_;
}

SocialLabel FeedbackEvent::social_label() const {
  if (channel_ != Channel::Social) {
    throw std::logic_error("effectiveness event carries no social label");
  }
  return social_;
}

std::vector<FeedbackEvent> route(DesignKind design, const RawTrainerSignal& raw,
                                 const FeedbackContext& ctx) {
  return route(design, TrainerSignal(raw), ctx);
}

std::vector<FeedbackEvent> route(DesignKind design, const TrainerSignal& signal,
                                 const FeedbackContext& ctx) {
  std::vector<FeedbackEvent> events;
  if (design == DesignKind::Blended) {
    const bool negative =
        (signal.effectiveness && *signal.effectiveness < 0) ||
        (signal.social && *signal.social == SocialLabel::Unacceptable);
    if (negative) {
      events.push_back(FeedbackEvent::effectiveness(ctx, -1));
    } else if (signal.effectiveness && signal.social) {
      events.push_back(FeedbackEvent::effectiveness(ctx, 1));
    }
    return events;
  }
  if (effectiveness_channel_open(design) && signal.effectiveness) {
    events.push_back(FeedbackEvent::effectiveness(ctx, *signal.effectiveness));
  }
  if (social_channel_open(design) && signal.social) {
    events.push_back(FeedbackEvent::social(ctx, *signal.social));
  }
  return events;
}

}  // namespace star
