#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "star/experiment.hpp"
#include "star/match.hpp"

namespace star::gateway {

enum class Phase { AwaitingAction, AwaitingFeedback, Ended };
std::string_view to_string(Phase p);

struct FeedbackMessage {
  std::optional<int> effectiveness;
  std::optional<SocialLabel> social;
  // The state's seq this answers; omitted means the current pending action.
  std::optional<std::int64_t> seq;
  bool operator==(const FeedbackMessage&) const = default;
};

enum class ControlCommand { Start, Pause, Resume, Config, Stop };
std::string_view to_string(ControlCommand c);

struct ControlMessage {
  ControlCommand cmd = ControlCommand::Start;
  nlohmann::json body;  // the "config" object for Config, otherwise empty
};

using ClientMessage = std::variant<FeedbackMessage, ControlMessage>;

// Client -> server. Throws ProtocolError on anything outside the schema:
//   {"type":"feedback","effectiveness":1|-1|null,"social":"permissible"|"unacceptable"|null,"seq":n?}
//   {"type":"control","cmd":"start"|"pause"|"resume"|"stop"}
//   {"type":"control","cmd":"config","config":{"match":{...},"agent":{...}}}
ClientMessage parse_client_message(std::string_view text);
nlohmann::json to_json(const ClientMessage& m);

// Server -> client.
nlohmann::json state_message(const std::string& session, const TrainerContext& ctx);
nlohmann::json game_end_message(const std::string& session, int game_index,
                                const GameStats& stats, std::string_view end);
nlohmann::json error_message(const std::string& session, std::string_view code,
                             std::string_view detail);
nlohmann::json status_message(const std::string& session, Phase phase, bool paused,
                              std::string_view note);

struct SessionOptions {
  // While waiting for feedback: after this long the action proceeds with
  // no signal on either channel. Unset: wait indefinitely.
  std::optional<std::chrono::milliseconds> feedback_timeout;
  // No inbound message for this long ends the session with SessionTimeout.
  std::chrono::milliseconds idle_timeout = std::chrono::minutes(30);
  // Games are written here as NDJSON when the session ends, if non-empty.
  std::string records_path;
};

using Sink = std::function<void(const nlohmann::json&)>;

// One live training session. Inbound text is queued and consumed in arrival
// order by the session's own game thread; outbound messages go to the sink
// from that thread.
class Session {
 public:
  Session(std::string id, MatchConfig config, AgentConfig agent_config,
          SessionOptions options, Sink sink);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const { return id_; }

  // Thread safe.
  void post(std::string text);
  // Client went away: the session ends at the next wait.
  void disconnect();
  void wait();

  Phase phase() const;
  bool paused() const;
  std::vector<GameRecord> records() const;
  // Rejected inbound messages, for diagnostics.
  std::vector<std::string> rejected() const;
  // Set when the session ended by an error (e.g. SessionTimeout).
  std::optional<std::string> failure() const;

 private:
  class LiveTrainer;
  friend class LiveTrainer;

  enum class WaitMode { Start, Feedback };
  // Blocks for the next message that is meaningful in `mode`.
  std::optional<FeedbackMessage> next(WaitMode mode);
  void run();
  void emit(const nlohmann::json& m);
  void reject(std::string_view code, const std::string& detail, const std::string& text);
  void set_phase(Phase p);

  std::string id_;
  MatchConfig config_;
  AgentConfig agent_config_;
  SessionOptions options_;
  Sink sink_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> inbox_;
  bool disconnected_ = false;
  Phase phase_ = Phase::AwaitingAction;
  bool paused_ = false;
  bool stop_requested_ = false;
  std::int64_t pending_seq_ = 0;
  std::vector<GameRecord> records_;
  std::vector<std::string> rejected_;
  std::optional<std::string> failure_;

  std::thread thread_;
};

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8765;  // 0: pick a free port
  MatchConfig match;
  AgentConfig agent;
  SessionOptions session;
};

// Websocket front end: each connection gets its own Session; text frames
// carry the JSON messages above.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts serving on a background thread.
  void start();
  unsigned short port() const;
  void stop();
  // Blocks until stop() is called from another thread.
  void run_forever();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace star::gateway
