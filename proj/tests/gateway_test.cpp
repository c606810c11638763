#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "star/errors.hpp"
#include "star/gateway.hpp"
#include "star/record_io.hpp"

using namespace star;
using namespace star::gateway;
using nlohmann::json;
using namespace std::chrono_literals;

namespace {

MatchConfig small(int games = 2) {
  MatchConfig c;
  c.board_width = 6;
  c.board_height = 10;
  c.games_count = games;
  c.max_pieces_per_game = 30;
  return c;
}

// Collects everything the session sends.
class Outbox {
 public:
  void push(const json& m) {
    {
      std::lock_guard lock(mu_);
      msgs_.push_back(m);
    }
    cv_.notify_all();
  }

  bool wait_for(const std::function<bool(const std::vector<json>&)>& pred,
                std::chrono::milliseconds limit = 10s) {
    std::unique_lock lock(mu_);
    return cv_.wait_for(lock, limit, [&] { return pred(msgs_); });
  }

  std::vector<json> of_type(const std::string& type) const {
    std::lock_guard lock(mu_);
    std::vector<json> out;
    for (const auto& m : msgs_) {
      if (m["type"] == type) out.push_back(m);
    }
    return out;
  }

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::vector<json> msgs_;
};

auto has(const std::string& type, const std::string& key = "", const json& value = nullptr) {
  return [=](const std::vector<json>& ms) {
    for (const auto& m : ms) {
      if (m["type"] == type && (key.empty() || m[key] == value)) return true;
    }
    return false;
  };
}

// The scripted proxy, seeing only what a remote trainer sees.
json proxy_reply(const MatchConfig& c, const json& state) {
  const auto before = Board::from_text(state["board"].get<std::string>());
  const auto piece = piece_from_json(state["piece"]);
  const auto action = action_from_json(state["action"]);
  const auto s = proxy_signal(ProxyPolicy{}, c.social_code, c.team, state["actingAgent"].get<int>(),
                              before, piece, action, c.judge);
  return to_json(ClientMessage{FeedbackMessage{s.effectiveness, s.social, state["seq"].get<int64_t>()}});
}

std::vector<GameRecord> in_process(const MatchConfig& c) {
  auto agents = make_agents(c, AgentConfig{});
  ProxyTrainer t;
  return run_suite(c, agents, t);
}

}  // namespace

TEST_CASE("client messages parse and serialize") {
  const auto fb = parse_client_message(R"({"type":"feedback","effectiveness":-1,"social":"permissible","seq":4})");
  REQUIRE(std::holds_alternative<FeedbackMessage>(fb));
  CHECK(std::get<FeedbackMessage>(fb) == FeedbackMessage{-1, SocialLabel::Permissible, 4});
  CHECK(to_json(parse_client_message(to_json(fb).dump())) == to_json(fb));

  const auto only = std::get<FeedbackMessage>(parse_client_message(R"({"type":"feedback","social":"unacceptable"})"));
  CHECK_FALSE(only.effectiveness);
  CHECK(only.social == SocialLabel::Unacceptable);

  for (const char* cmd : {"start", "pause", "resume", "stop"}) {
    const auto m = parse_client_message(json{{"type", "control"}, {"cmd", cmd}}.dump());
    CHECK(to_string(std::get<ControlMessage>(m).cmd) == cmd);
  }
  const auto cfg = std::get<ControlMessage>(
      parse_client_message(R"({"type":"control","cmd":"config","config":{"match":{"games":3}}})"));
  CHECK(cfg.cmd == ControlCommand::Config);
  CHECK(cfg.body["match"]["games"] == 3);
}

TEST_CASE("malformed client messages are protocol errors") {
  for (const char* bad : {
           "", "not json", "[]", R"({"effectiveness":1})", R"({"type":"hello"})",
           R"({"type":"feedback"})", R"({"type":"feedback","effectiveness":0})",
           R"({"type":"feedback","effectiveness":"yes"})", R"({"type":"feedback","social":"fine"})",
           R"({"type":"feedback","social":"permissible","extra":1})",
           R"({"type":"feedback","social":"permissible","seq":"x"})",
           R"({"type":"control"})", R"({"type":"control","cmd":"jump"})",
           R"({"type":"control","cmd":"config"})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_client_message(bad), ProtocolError);
  }
}

TEST_CASE("a remote proxy reproduces the in-process run") {
  for (auto d : kDesigns) {
    auto c = small();
    c.design = d;
    Outbox out;
    Session* self = nullptr;
    Session s("t", c, AgentConfig{}, {}, [&](const json& m) {
      if (m["type"] == "state") self->post(proxy_reply(c, m).dump());
      out.push(m);
    });
    self = &s;
    s.post(R"({"type":"control","cmd":"start"})");
    s.wait();
    CHECK_FALSE(s.failure());
    CHECK(s.rejected().empty());
    CHECK(s.phase() == Phase::Ended);
    CHECK(records_to_ndjson(s.records()) == records_to_ndjson(in_process(c)));
    CHECK(out.of_type("gameEnd").size() == 2);
  }
}

TEST_CASE("state messages describe the pending action") {
  const auto c = small(1);
  Outbox out;
  Session s("abc", c, AgentConfig{}, {}, [&](const json& m) { out.push(m); });
  s.post(R"({"type":"control","cmd":"start"})");
  REQUIRE(out.wait_for(has("state")));
  const auto st = out.of_type("state").front();
  CHECK(st["session"] == "abc");
  CHECK(st["seq"] == 1);
  CHECK(st["game"] == 0);
  CHECK(st["block"] == 0);
  CHECK(st["width"] == 6);
  CHECK(st["height"] == 10);
  CHECK(st["cells"].size() == 4);
  CHECK(st["gameStats"]["actions"] == 1);
  CHECK(s.phase() == Phase::AwaitingFeedback);
  s.post(R"({"type":"control","cmd":"stop"})");
  s.wait();
  CHECK(s.phase() == Phase::Ended);
  CHECK_FALSE(s.failure());
}

TEST_CASE("social-only feedback delivers one event") {
  auto c = small(1);
  c.sequence_mode = SequenceMode::ExplicitList;
  c.explicit_sequences = {{Piece{Shape::T, Color::Red}}};
  Session s("t", c, AgentConfig{}, {}, [&](const json&) {});
  s.post(R"({"type":"control","cmd":"start"})");
  s.post(R"({"type":"feedback","social":"unacceptable"})");
  s.wait();
  const auto recs = s.records();
  REQUIRE(recs.size() == 1);
  REQUIRE(recs[0].actions.size() == 1);
  const auto& a = recs[0].actions[0];
  CHECK_FALSE(a.signal.effectiveness);
  REQUIRE(a.events.size() == 1);
  CHECK(a.events[0].channel == Channel::Social);
  CHECK(a.events[0].value == 0);
}

TEST_CASE("out-of-turn and stale messages are rejected without effect") {
  auto c = small(1);
  c.sequence_mode = SequenceMode::ExplicitList;
  c.explicit_sequences = {{Piece{Shape::O, Color::Red}, Piece{Shape::O, Color::Blue}}};
  Outbox out;
  Session s("t", c, AgentConfig{}, {}, [&](const json& m) { out.push(m); });
  s.post(R"({"type":"feedback","effectiveness":1,"social":"permissible"})");
  s.post("garbage");
  s.post(R"({"type":"control","cmd":"start"})");
  REQUIRE(out.wait_for(has("state", "seq", 1)));
  s.post(R"({"type":"control","cmd":"start"})");
  s.post(R"({"type":"control","cmd":"config","config":{"match":{"games":3}}})");
  s.post(R"({"type":"feedback","effectiveness":1,"seq":7})");
  s.post(R"({"type":"feedback","effectiveness":1,"seq":1})");
  REQUIRE(out.wait_for(has("state", "seq", 2)));
  s.post(R"({"type":"feedback","effectiveness":-1,"seq":1})");
  s.post(R"({"type":"feedback","effectiveness":-1,"seq":2})");
  s.wait();

  const auto errs = out.of_type("error");
  std::vector<std::string> codes;
  for (const auto& e : errs) codes.push_back(e["code"]);
  CHECK(codes == std::vector<std::string>{"stale", "protocol", "state", "state", "stale", "stale"});
  CHECK(s.rejected().size() == 6);
  const auto recs = s.records();
  REQUIRE(recs.size() == 1);
  REQUIRE(recs[0].actions.size() == 2);
  CHECK(recs[0].actions[0].signal.effectiveness == 1);
  CHECK(recs[0].actions[1].signal.effectiveness == -1);
}

TEST_CASE("config before start changes the match") {
  Outbox out;
  Session s("t", small(1), AgentConfig{}, {}, [&](const json& m) { out.push(m); });
  s.post(R"({"type":"control","cmd":"config","config":{"match":{"games":0}}})");
  s.post(R"({"type":"control","cmd":"config","config":{"match":{"design":"blended","max_pieces_per_game":3},"agent":{"social_replay_passes":0}}})");
  s.post(R"({"type":"control","cmd":"start"})");
  REQUIRE(out.wait_for(has("state")));
  CHECK(out.of_type("state").front()["design"] == "blended");
  CHECK(out.of_type("error").front()["code"] == "config");
  for (int k = 1; k <= 3; ++k) s.post(json{{"type", "feedback"}, {"effectiveness", 1}, {"seq", k}}.dump());
  s.wait();
  REQUIRE(s.records().size() == 1);
  CHECK(s.records()[0].actions.size() == 3);
  CHECK(s.records()[0].end == GameEnd::PieceCap);
}

TEST_CASE("pause holds feedback until resume") {
  Outbox out;
  SessionOptions o;
  o.feedback_timeout = 50ms;
  Session s("t", small(1), AgentConfig{}, o, [&](const json& m) { out.push(m); });
  s.post(R"({"type":"control","cmd":"start"})");
  REQUIRE(out.wait_for(has("state")));
  s.post(R"({"type":"control","cmd":"pause"})");
  REQUIRE(out.wait_for(has("status", "note", "paused")));
  CHECK(s.paused());
  std::this_thread::sleep_for(200ms);
  CHECK(out.of_type("state").size() == 1);
  s.post(R"({"type":"feedback","effectiveness":1})");
  REQUIRE(out.wait_for(has("error", "code", "paused")));
  s.post(R"({"type":"control","cmd":"resume"})");
  REQUIRE(out.wait_for(has("state", "seq", 2)));
  CHECK_FALSE(s.paused());
  s.post(R"({"type":"control","cmd":"stop"})");
  s.wait();
  const auto recs = s.records();
  CHECK(recs.empty());
}

TEST_CASE("feedback timeout advances with no signal") {
  auto c = small(1);
  c.max_pieces_per_game = 4;
  SessionOptions o;
  o.feedback_timeout = 10ms;
  Session s("t", c, AgentConfig{}, o, [](const json&) {});
  s.post(R"({"type":"control","cmd":"start"})");
  s.wait();
  REQUIRE(s.records().size() == 1);
  for (const auto& a : s.records()[0].actions) {
    CHECK_FALSE(a.signal.effectiveness);
    CHECK_FALSE(a.signal.social);
    CHECK(a.events.empty());
  }
}

TEST_CASE("an idle trainer times the session out") {
  SessionOptions o;
  o.idle_timeout = 50ms;
  Outbox out;
  Session s("t", small(1), AgentConfig{}, o, [&](const json& m) { out.push(m); });
  s.wait();
  REQUIRE(s.failure());
  CHECK(s.phase() == Phase::Ended);
  CHECK(out.wait_for(has("error", "code", "fatal"), 1s));
  CHECK(out.wait_for(has("status", "note", "ended"), 1s));
}

TEST_CASE("disconnect ends the session") {
  Session s("t", small(1), AgentConfig{}, {}, [](const json&) {});
  s.post(R"({"type":"control","cmd":"start"})");
  s.disconnect();
  s.wait();
  CHECK(s.phase() == Phase::Ended);
  CHECK_FALSE(s.failure());
}

TEST_CASE("websocket round trip") {
  namespace beast = boost::beast;
  namespace ws = beast::websocket;
  using tcp = boost::asio::ip::tcp;

  ServerOptions so;
  so.port = 0;
  so.match = small(1);
  so.match.max_pieces_per_game = 5;
  Server server(so);
  server.start();
  REQUIRE(server.port() != 0);

  boost::asio::io_context ioc;
  tcp::resolver resolver(ioc);
  ws::stream<tcp::socket> client(ioc);
  boost::asio::connect(client.next_layer(), resolver.resolve("127.0.0.1", std::to_string(server.port())));
  client.handshake("127.0.0.1", "/");

  const auto read = [&] {
    beast::flat_buffer buf;
    client.read(buf);
    return json::parse(beast::buffers_to_string(buf.data()));
  };
  const auto send = [&](const std::string& text) { client.write(boost::asio::buffer(text)); };

  CHECK(read()["note"] == "ready");
  send(R"({"type":"control","cmd":"start"})");
  int states = 0;
  json end;
  for (;;) {
    const auto m = read();
    if (m["type"] == "state") {
      ++states;
      send(proxy_reply(so.match, m).dump());
    } else if (m["type"] == "gameEnd") {
      end = m;
    } else if (m["type"] == "status" && m["note"] == "ended") {
      break;
    }
  }
  CHECK(states == 5);
  CHECK(end["gameStats"]["actions"] == 5);
  CHECK(end["end"] == "piece_cap");
  const auto expected = in_process(so.match);
  CHECK(end["gameStats"]["rowsCleared"] == expected[0].totals.rows_cleared);
  CHECK(end["gameStats"]["permissibleActions"] == expected[0].totals.permissible_actions);
  beast::error_code ec;
  client.close(ws::close_code::normal, ec);
  server.stop();
}
