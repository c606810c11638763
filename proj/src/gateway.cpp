#include "star/gateway.hpp"

#include <fstream>
#include <utility>

#include "star/config_io.hpp"
#include "star/errors.hpp"
#include "star/record_io.hpp"

namespace star::gateway {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Stopped {};

json stats_json(const GameStats& s) {
  return {{"rowsCleared", s.rows_cleared},
          {"actions", s.actions},
          {"permissibleActions", s.permissible_actions},
          {"pctPermissible",
           s.actions == 0 ? 100.0 : 100.0 * s.permissible_actions / s.actions}};
}

std::optional<int> parse_effectiveness(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number_integer()) throw ProtocolError("effectiveness must be 1, -1 or null");
  const auto v = j.get<long long>();
  if (v != 1 && v != -1) throw ProtocolError("effectiveness must be 1, -1 or null");
  return static_cast<int>(v);
}

std::optional<SocialLabel> parse_social(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_string()) throw ProtocolError("social must be a string or null");
  return parse_social_label(j.get<std::string>());
}

}  // namespace

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::AwaitingAction: return "awaitingAction";
    case Phase::AwaitingFeedback: return "awaitingFeedback";
    case Phase::Ended: return "ended";
  }
  return "?";
}

std::string_view to_string(ControlCommand c) {
  switch (c) {
    case ControlCommand::Start: return "start";
    case ControlCommand::Pause: return "pause";
    case ControlCommand::Resume: return "resume";
    case ControlCommand::Config: return "config";
    case ControlCommand::Stop: return "stop";
  }
  return "?";
}

ClientMessage parse_client_message(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("message must be a JSON object");
  const auto type = j.find("type");
  if (type == j.end() || !type->is_string()) throw ProtocolError("missing \"type\"");
  if (*type == "feedback") {
    for (const auto& [k, v] : j.items()) {
      if (k != "type" && k != "effectiveness" && k != "social" && k != "seq") {
        throw ProtocolError("unknown feedback field \"" + k + "\"");
      }
    }
    if (!j.contains("effectiveness") && !j.contains("social")) {
      throw ProtocolError("feedback needs \"effectiveness\" and/or \"social\"");
    }
    FeedbackMessage m;
    m.effectiveness = parse_effectiveness(j.value("effectiveness", json()));
    m.social = parse_social(j.value("social", json()));
    if (j.contains("seq")) {
      if (!j["seq"].is_number_integer()) throw ProtocolError("seq must be an integer");
      m.seq = j["seq"].get<std::int64_t>();
    }
    return m;
  }
  if (*type == "control") {
    const auto cmd = j.find("cmd");
    if (cmd == j.end() || !cmd->is_string()) throw ProtocolError("missing \"cmd\"");
    ControlMessage m;
    const auto name = cmd->get<std::string>();
    if (name == "start") m.cmd = ControlCommand::Start;
    else if (name == "pause") m.cmd = ControlCommand::Pause;
    else if (name == "resume") m.cmd = ControlCommand::Resume;
    else if (name == "stop") m.cmd = ControlCommand::Stop;
    else if (name == "config") {
      m.cmd = ControlCommand::Config;
      if (!j.contains("config") || !j["config"].is_object()) {
        throw ProtocolError("config command needs a \"config\" object");
      }
      m.body = j["config"];
    } else {
      throw ProtocolError("unknown control command \"" + name + "\"");
    }
    return m;
  }
  throw ProtocolError("unknown message type \"" + type->get<std::string>() + "\"");
}

json to_json(const ClientMessage& m) {
  if (const auto* f = std::get_if<FeedbackMessage>(&m)) {
    json j = {{"type", "feedback"}, {"effectiveness", nullptr}, {"social", nullptr}};
    if (f->effectiveness) j["effectiveness"] = *f->effectiveness;
    if (f->social) j["social"] = std::string(to_string(*f->social));
    if (f->seq) j["seq"] = *f->seq;
    return j;
  }
  const auto& c = std::get<ControlMessage>(m);
  json j = {{"type", "control"}, {"cmd", std::string(to_string(c.cmd))}};
  if (c.cmd == ControlCommand::Config) j["config"] = c.body;
  return j;
}

json state_message(const std::string& session, const TrainerContext& ctx) {
  json cells = json::array();
  for (const auto& c : ctx.outcome.landed) cells.push_back({c.row, c.col});
  return {{"type", "state"},
          {"session", session},
          {"game", ctx.game_index},
          {"block", ctx.block_index},
          {"design", std::string(to_string(ctx.config.design))},
          {"code", std::string(to_string(ctx.config.social_code))},
          {"width", ctx.before.width()},
          {"height", ctx.before.height()},
          {"board", ctx.before.to_text()},
          {"piece", star::to_json(ctx.piece)},
          {"actingAgent", ctx.acting},
          {"action", star::to_json(ctx.selection.action)},
          {"cells", cells},
          {"rowsCleared", ctx.outcome.rows_cleared},
          {"gameStats", stats_json(ctx.stats)}};
}

json game_end_message(const std::string& session, int game_index,
                      const GameStats& stats, std::string_view end) {
  return {{"type", "gameEnd"},
          {"session", session},
          {"game", game_index},
          {"end", std::string(end)},
          {"gameStats", stats_json(stats)}};
}

json error_message(const std::string& session, std::string_view code,
                   std::string_view detail) {
  return {{"type", "error"},
          {"session", session},
          {"code", std::string(code)},
          {"detail", std::string(detail)}};
}

json status_message(const std::string& session, Phase phase, bool paused,
                    std::string_view note) {
  return {{"type", "status"},
          {"session", session},
          {"phase", std::string(to_string(phase))},
          {"paused", paused},
          {"note", std::string(note)}};
}

class Session::LiveTrainer : public Trainer {
 public:
  explicit LiveTrainer(Session& s) : s_(s) {}

  TrainerSignal feedback(const TrainerContext& ctx) override {
    const auto seq = ++seq_;
    {
      std::lock_guard lock(s_.mu_);
      s_.pending_seq_ = seq;
    }
    s_.set_phase(Phase::AwaitingFeedback);
    auto msg = state_message(s_.id_, ctx);
    msg["seq"] = seq;
    s_.emit(msg);
    const auto fb = s_.next(WaitMode::Feedback);
    s_.set_phase(Phase::AwaitingAction);
    if (!fb) return {};
    return TrainerSignal{fb->effectiveness, fb->social};
  }

 private:
  Session& s_;
  std::int64_t seq_ = 0;
};

Session::Session(std::string id, MatchConfig config, AgentConfig agent_config,
                 SessionOptions options, Sink sink)
    : id_(std::move(id)),
      config_(std::move(config)),
      agent_config_(agent_config),
      options_(std::move(options)),
      sink_(std::move(sink)) {
  validate(config_);
  thread_ = std::thread([this] { run(); });
}

Session::~Session() {
  disconnect();
  wait();
}

void Session::post(std::string text) {
  {
    std::lock_guard lock(mu_);
    inbox_.push_back(std::move(text));
  }
  cv_.notify_all();
}

void Session::disconnect() {
  {
    std::lock_guard lock(mu_);
    disconnected_ = true;
  }
  cv_.notify_all();
}

void Session::wait() {
  if (thread_.joinable()) thread_.join();
}

Phase Session::phase() const {
  std::lock_guard lock(mu_);
  return phase_;
}

bool Session::paused() const {
  std::lock_guard lock(mu_);
  return paused_;
}

std::vector<GameRecord> Session::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::vector<std::string> Session::rejected() const {
  std::lock_guard lock(mu_);
  return rejected_;
}

std::optional<std::string> Session::failure() const {
  std::lock_guard lock(mu_);
  return failure_;
}

void Session::emit(const json& m) {
  if (sink_) sink_(m);
}

void Session::reject(std::string_view code, const std::string& detail,
                     const std::string& text) {
  {
    std::lock_guard lock(mu_);
    rejected_.push_back(text);
  }
  emit(error_message(id_, code, detail));
}

void Session::set_phase(Phase p) {
  std::lock_guard lock(mu_);
  phase_ = p;
}

std::optional<FeedbackMessage> Session::next(WaitMode mode) {
  auto idle_deadline = Clock::now() + options_.idle_timeout;
  auto feedback_deadline = Clock::time_point::max();
  const auto arm_feedback = [&] {
    feedback_deadline = options_.feedback_timeout && mode == WaitMode::Feedback
                            ? Clock::now() + *options_.feedback_timeout
                            : Clock::time_point::max();
  };
  arm_feedback();

  for (;;) {
    std::string text;
    {
      std::unique_lock lock(mu_);
      while (inbox_.empty() && !disconnected_) {
        const auto wake = paused_ ? idle_deadline : std::min(idle_deadline, feedback_deadline);
        cv_.wait_until(lock, wake);
        if (!inbox_.empty() || disconnected_) break;
        const auto now = Clock::now();
        if (now >= idle_deadline) {
          throw SessionTimeout("no message from the trainer within the idle timeout");
        }
        if (!paused_ && now >= feedback_deadline) return FeedbackMessage{};
      }
      if (inbox_.empty()) throw Stopped{};
      text = std::move(inbox_.front());
      inbox_.pop_front();
    }
    idle_deadline = Clock::now() + options_.idle_timeout;

    ClientMessage msg;
    try {
      msg = parse_client_message(text);
    } catch (const ProtocolError& e) {
      reject("protocol", e.what(), text);
      continue;
    }

    if (auto* fb = std::get_if<FeedbackMessage>(&msg)) {
      if (mode != WaitMode::Feedback) {
        reject("stale", "no action is awaiting feedback", text);
        continue;
      }
      if (paused()) {
        reject("paused", "session is paused", text);
        continue;
      }
      std::int64_t pending;
      {
        std::lock_guard lock(mu_);
        pending = pending_seq_;
      }
      if (fb->seq && *fb->seq != pending) {
        reject("stale", "feedback refers to seq " + std::to_string(*fb->seq) +
                            ", pending is " + std::to_string(pending), text);
        continue;
      }
      return *fb;
    }

    const auto& c = std::get<ControlMessage>(msg);
    switch (c.cmd) {
      case ControlCommand::Start:
        if (mode == WaitMode::Start) return std::nullopt;
        reject("state", "session already started", text);
        break;
      case ControlCommand::Pause:
        {
          std::lock_guard lock(mu_);
          paused_ = true;
        }
        emit(status_message(id_, phase(), true, "paused"));
        break;
      case ControlCommand::Resume:
        {
          std::lock_guard lock(mu_);
          paused_ = false;
        }
        arm_feedback();
        emit(status_message(id_, phase(), false, "resumed"));
        break;
      case ControlCommand::Config:
        if (mode != WaitMode::Start) {
          reject("state", "configuration can only change before start", text);
          break;
        }
        try {
          auto match = c.body.contains("match") ? match_from_json(c.body["match"], config_)
                                                : config_;
          validate(match);
          auto agent = c.body.contains("agent")
                           ? agent_config_from_json(c.body["agent"], agent_config_)
                           : agent_config_;
          config_ = std::move(match);
          agent_config_ = agent;
          emit(status_message(id_, phase(), paused(), "configured"));
        } catch (const std::exception& e) {
          reject("config", e.what(), text);
        }
        break;
      case ControlCommand::Stop:
        {
          std::lock_guard lock(mu_);
          stop_requested_ = true;
        }
        throw Stopped{};
    }
  }
}

void Session::run() {
  try {
    emit(status_message(id_, Phase::AwaitingAction, false, "ready"));
    next(WaitMode::Start);
    emit(status_message(id_, Phase::AwaitingAction, paused(), "started"));
    auto agents = make_agents(config_, agent_config_);
    LiveTrainer trainer(*this);
    for (int g = 0; g < config_.games_count; ++g) {
      auto record = run_game(config_, g, agents, trainer);
      emit(game_end_message(id_, g, record.totals, to_string(record.end)));
      std::lock_guard lock(mu_);
      records_.push_back(std::move(record));
    }
  } catch (const Stopped&) {
  } catch (const std::exception& e) {
    {
      std::lock_guard lock(mu_);
      failure_ = e.what();
    }
    emit(error_message(id_, "fatal", e.what()));
  }
  set_phase(Phase::Ended);
  if (!options_.records_path.empty()) {
    std::ofstream out(options_.records_path);
    write_records(out, records());
  }
  emit(status_message(id_, Phase::Ended, false, "ended"));
}

}  // namespace star::gateway
