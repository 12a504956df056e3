// Copyright 2026 The Coord Arena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "coord_arena/envs.h"
#include "coord_arena/errors.h"
#include "coord_arena/hanabi.h"
#include "coord_arena/service.h"
#include "doctest.h"
#include "httplib.h"
#include "json.hpp"

using namespace coord_arena;
using namespace coord_arena::service;
using nlohmann::json;
using namespace std::chrono_literals;

namespace {

SessionConfig Config(GameKind game, std::string seat0, std::string seat1, std::uint64_t seed = 1) {
  SessionConfig c;
  c.game = game;
  c.seats = {std::move(seat0), std::move(seat1)};
  c.seed = seed;
  c.horizon = 30;
  return c;
}

std::vector<Event> AllEvents(SessionManager& m, const std::string& id) { return m.EventsSince(id, 0); }

// Re-applies the logged decisions to a fresh environment.
std::unique_ptr<GameEnv> ReplayLog(const SessionConfig& cfg, const std::vector<Event>& events) {
  EnvConfig ec;
  ec.game = cfg.game;
  ec.seed = Seed{cfg.seed};
  ec.horizon = cfg.horizon;
  auto env = MakeEnv(ec);
  for (const auto& e : events) {
    if (!e.data.is_object() || !e.data.contains("decisions")) continue;
    std::vector<std::pair<int, ActionId>> ds;
    for (const auto& d : e.data["decisions"]) {
      const int seat = d["seat"].get<int>();
      const auto a = FindAction(env->LegalActions(seat), d["label"].get<std::string>());
      REQUIRE(a.has_value());
      ds.emplace_back(seat, *a);
    }
    env->Step(ds);
  }
  return env;
}

class TestServer {
 public:
  TestServer() {
    Mount(server_, manager_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    manager_.Shutdown();
    server_.stop();
    thread_.join();
  }
  httplib::Client Client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }
  SessionManager& manager() { return manager_; }

 private:
  SessionManager manager_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

struct SseFrame {
  std::int64_t id = 0;
  std::string event;
  json data;
};

// Reads SSE frames until the stream ends or `limit` frames arrived.
std::vector<SseFrame> ReadSse(httplib::Client& c, const std::string& path, const httplib::Headers& headers,
                              std::size_t limit) {
  std::vector<SseFrame> frames;
  std::string buf;
  c.Get(path, headers, [&](const char* data, std::size_t len) {
    buf.append(data, len);
    std::size_t end;
    while ((end = buf.find("\n\n")) != std::string::npos) {
      const std::string block = buf.substr(0, end);
      buf.erase(0, end + 2);
      SseFrame f;
      bool has_data = false;
      std::size_t start = 0;
      while (start <= block.size()) {
        auto nl = block.find('\n', start);
        if (nl == std::string::npos) nl = block.size();
        const std::string line = block.substr(start, nl - start);
        if (line.rfind("id: ", 0) == 0) f.id = std::stoll(line.substr(4));
        if (line.rfind("event: ", 0) == 0) f.event = line.substr(7);
        if (line.rfind("data: ", 0) == 0) {
          f.data = json::parse(line.substr(6));
          has_data = true;
        }
        start = nl + 1;
      }
      if (has_data) frames.push_back(f);
      if (frames.size() >= limit) return false;
    }
    return true;
  });
  return frames;
}

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("config from json") {
    const auto c = SessionConfigFromJson(json::parse(
        R"({"game":"kitchen","layout":"cramped_room","seats":["human","scripted:greedy-kitchen"],"seed":4,
            "names":["Ann","Ben"],"no_tom":true,"horizon":50,"agent_timeout_seconds":2.5})"));
    CHECK(c.game == GameKind::kKitchen);
    CHECK(c.seats[1] == "scripted:greedy-kitchen");
    CHECK(c.names[0] == "Ann");
    CHECK_FALSE(c.flags.tom);
    CHECK(c.flags.verify);
    CHECK(c.horizon == 50);
    CHECK(c.agent_timeout_seconds == 2.5);
    CHECK_THROWS_AS(SessionConfigFromJson(json::parse(R"({"game":"hanabi","seats":["human"]})")), ConfigError);
    CHECK_THROWS_AS(SessionConfigFromJson(json::parse(R"({"game":"chess"})")), ConfigError);
  }

  TEST_CASE("human seat sees legal actions and submits them") {
    SessionManager m;
    const auto id = m.Create(Config(GameKind::kHanabi, "human", "scripted:rule-hanabi"));
    CHECK(id == "s1");
    auto v0 = m.View(id, 0);
    CHECK(v0["status"] == "waiting");
    CHECK(v0["your_turn"] == true);
    REQUIRE(!v0["legal_actions"].empty());
    const auto v1 = m.View(id, 1);
    CHECK(v1["your_turn"] == false);
    CHECK(v1["legal_actions"].empty());

    const auto first = v0["legal_actions"][0];
    const auto sv = v0["state_version"].get<std::int64_t>();
    CHECK_THROWS_AS(m.Submit(id, 0, 0, "Play my Card 9", sv), StaleAction);
    CHECK_THROWS_AS(m.Submit(id, 0, first["index"], first["label"], sv + 1), StaleAction);
    const auto ack = m.Submit(id, 0, first["index"], first["label"], sv);
    CHECK(ack["accepted"] == true);
    CHECK(ack["state_version"] == sv + 1);
    REQUIRE(!ack["events"].empty());
    CHECK(ack["events"][0]["type"] == "action");
    CHECK(ack["events"][0]["data"]["decisions"][0]["label"] == first["label"]);
    CHECK_THROWS_AS(m.Submit(id, 1, 0, "x", std::nullopt), NotYourTurn);
    // The old version is stale even if the agent already moved.
    CHECK_THROWS_AS(m.Submit(id, 0, first["index"], first["label"], sv), std::exception);
    CHECK_THROWS_AS(m.View("s99", 0), UnknownSession);
    CHECK_THROWS_AS(m.View(id, 2), ConfigError);
  }

  TEST_CASE("agent versus agent runs to the end and the log replays the game") {
    SessionManager m;
    for (auto game : {GameKind::kHanabi, GameKind::kKitchen, GameKind::kCapture, GameKind::kEscape}) {
      const std::string a = game == GameKind::kHanabi ? "scripted:rule-hanabi"
                            : game == GameKind::kKitchen ? "scripted:greedy-kitchen"
                                                         : "random:5";
      const auto cfg = Config(game, a, a, 7);
      const auto id = m.Create(cfg);
      REQUIRE(m.WaitFinished(id, 20s));
      const auto view = m.View(id, 0);
      CHECK(view["status"] == "finished");
      CHECK(view.contains("final_score"));
      CHECK(!view["transcript"].empty());
      const auto events = AllEvents(m, id);
      CHECK(events.back().type == "finished");
      for (std::size_t i = 0; i < events.size(); ++i) CHECK(events[i].id == static_cast<std::int64_t>(i + 1));
      const auto env = ReplayLog(cfg, events);
      CHECK(env->IsTerminal());
      CHECK(env->Score() == view["final_score"].get<int>());
      CHECK(env->Observation(0) == view["observation"].get<std::string>());
    }
  }

  TEST_CASE("seat views never expose the viewer's own hanabi hand") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto s = hanabi::Deal(Seed{seed});
      auto t = s;
      // Swap the viewer's hand with the top of the deck; knowledge stays identical.
      for (std::size_t i = 0; i < t.hands[0].size(); ++i) std::swap(t.hands[0][i], t.deck[t.deck.size() - 1 - i]);
      const HanabiEnv a(s, DefaultNames()), b(t, DefaultNames());
      CHECK(SeatView(a, 0) == SeatView(b, 0));
      CHECK(SeatView(a, 1) != SeatView(b, 1));
    }
    SessionManager m;
    const auto id = m.Create(Config(GameKind::kHanabi, "human", "human"));
    const auto v = m.View(id, 0);
    CHECK_FALSE(v.contains("state"));
    CHECK_FALSE(v["hanabi"].contains("hands"));
    CHECK_FALSE(v["hanabi"].contains("deck"));
  }

  TEST_CASE("simultaneous games wait for both humans") {
    SessionManager m;
    const auto id = m.Create(Config(GameKind::kCapture, "human", "human"));
    const auto v0 = m.View(id, 0), v1 = m.View(id, 1);
    const auto stay0 = v0["legal_actions"].back(), stay1 = v1["legal_actions"].back();
    const auto ack0 = m.Submit(id, 0, stay0["index"], stay0["label"], std::nullopt);
    CHECK(ack0["events"].empty());
    CHECK(ack0["state_version"] == v0["state_version"]);
    CHECK_THROWS_AS(m.Submit(id, 0, stay0["index"], stay0["label"], std::nullopt), NotYourTurn);
    const auto ack1 = m.Submit(id, 1, stay1["index"], stay1["label"], std::nullopt);
    CHECK(ack1["state_version"] == v0["state_version"].get<std::int64_t>() + 1);
    CHECK(!ack1["events"].empty());
  }

  TEST_CASE("create rejects bad configurations up front") {
    SessionManager m;
    auto c = Config(GameKind::kKitchen, "human", "scripted:greedy-kitchen");
    c.layout = "no_such_kitchen";
    CHECK_THROWS(m.Create(c));
    CHECK_THROWS_AS(m.Create(Config(GameKind::kHanabi, "human", "bogus:x")), ConfigError);
    CHECK(m.List()["sessions"].empty());
  }

  TEST_CASE("http: create, view, act, errors, poll") {
    TestServer ts;
    auto c = ts.Client();
    auto r = c.Post("/sessions", R"({"game":"hanabi","seats":["human","scripted:rule-hanabi"],"seed":2})",
                    "application/json");
    REQUIRE(r);
    CHECK(r->status == 201);
    const auto id = json::parse(r->body)["id"].get<std::string>();
    CHECK(r->get_header_value("Access-Control-Allow-Origin") == "*");

    r = c.Get("/sessions/" + id + "/view?seat=0");
    REQUIRE(r);
    CHECK(r->status == 200);
    const auto view = json::parse(r->body);
    const auto a = view["legal_actions"][0];
    json body = {{"seat", 0}, {"index", a["index"]}, {"label", a["label"]}, {"state_version", view["state_version"]}};
    r = c.Post("/sessions/" + id + "/actions", body.dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    r = c.Post("/sessions/" + id + "/actions", body.dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == 409);
    CHECK(json::parse(r->body)["error"].get<std::string>().size() > 0);

    r = c.Get("/sessions/nope/view?seat=0");
    REQUIRE(r);
    CHECK(r->status == 404);
    CHECK(json::parse(r->body)["error"] == "UnknownSession");
    r = c.Post("/sessions", R"({"game":"kitchen","layout":"atlantis"})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    CHECK(json::parse(r->body)["error"] == "ValidationError");
    r = c.Post("/sessions", "{broken", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);

    r = c.Get("/sessions/" + id + "/events?format=json&cursor=0&wait_ms=500");
    REQUIRE(r);
    CHECK(r->status == 200);
    const auto polled = json::parse(r->body);
    REQUIRE(!polled["events"].empty());
    CHECK(polled["events"][0]["type"] == "created");

    r = c.Get("/sessions");
    REQUIRE(r);
    CHECK(json::parse(r->body)["sessions"].size() == 1);
  }

  TEST_CASE("http: event stream resumes without gaps after reconnect") {
    TestServer ts;
    auto c = ts.Client();
    auto r = c.Post("/sessions",
                    R"({"game":"hanabi","seats":["scripted:rule-hanabi","scripted:rule-hanabi"],"seed":9})",
                    "application/json");
    REQUIRE(r);
    const auto id = json::parse(r->body)["id"].get<std::string>();
    const std::string path = "/sessions/" + id + "/events";

    auto first = ReadSse(c, path, {}, 5);
    REQUIRE(first.size() == 5);
    auto c2 = ts.Client();
    auto rest = ReadSse(c2, path, {{"Last-Event-ID", std::to_string(first.back().id)}}, 100000);
    auto c3 = ts.Client();
    auto via_cursor = ReadSse(c3, path + "?cursor=" + std::to_string(first.back().id), {}, 100000);
    REQUIRE(!rest.empty());
    CHECK(rest.back().event == "finished");
    CHECK(rest.size() == via_cursor.size());

    std::vector<SseFrame> all = first;
    all.insert(all.end(), rest.begin(), rest.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].id == static_cast<std::int64_t>(i + 1));
      CHECK(all[i].data["id"] == all[i].id);
      CHECK(all[i].data["type"] == all[i].event);
    }
    CHECK(all.size() == AllEvents(ts.manager(), id).size());
    r = c.Get("/sessions/" + id + "/view?seat=1");
    REQUIRE(r);
    CHECK(json::parse(r->body)["status"] == "finished");
  }

  TEST_CASE("http: agent decisions link to their traces") {
    const auto script = std::filesystem::temp_directory_path() / "coord_arena_service_stay.txt";
    {
      std::ofstream out(script);
      for (int i = 0; i < 50; ++i) out << "Action: Stay in current Room\n";
    }
    TestServer ts;
    auto c = ts.Client();
    json req = {{"game", "capture"},
                {"seats", {"human", "replay:" + script.string()}},
                {"no_tom", true},
                {"no_verify", true}};
    auto r = c.Post("/sessions", req.dump(), "application/json");
    REQUIRE(r);
    REQUIRE(r->status == 201);
    const auto id = json::parse(r->body)["id"].get<std::string>();
    auto events = ts.manager().EventsSince(id, 0, 5s);
    // Wait for the agent's decision to be logged.
    std::int64_t trace_id = 0;
    for (int i = 0; i < 50 && trace_id == 0; ++i) {
      for (const auto& e : ts.manager().EventsSince(id, 0)) {
        if (e.type == "agent_action") trace_id = e.data["trace_id"].get<std::int64_t>();
      }
      if (trace_id == 0) std::this_thread::sleep_for(50ms);
    }
    REQUIRE(trace_id > 0);
    r = c.Get("/sessions/" + id + "/traces/" + std::to_string(trace_id));
    REQUIRE(r);
    CHECK(r->status == 200);
    const auto trace = json::parse(r->body);
    CHECK(trace["chosen"] == "Stay in current Room");
    CHECK(trace["calls"].size() == 1);
    CHECK(trace["calls"][0]["role"] == "planner");
    r = c.Get("/sessions/" + id + "/traces/1");
    REQUIRE(r);
    CHECK(r->status == 404);
    std::filesystem::remove(script);
  }

  TEST_CASE("slow agents time out into the fallback action") {
    httplib::Server slow;
    slow.Post("/v1/chat/completions", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(1s);
      json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "Action: Move to Room 1"}}}}}}};
      res.set_content(body.dump(), "application/json");
    });
    const int port = slow.bind_to_any_port("127.0.0.1");
    std::thread th([&] { slow.listen_after_bind(); });
    slow.wait_until_ready();
    {
      SessionManager m;
      auto cfg = Config(GameKind::kCapture, "human", "http:slow@http://127.0.0.1:" + std::to_string(port) +
                                                         "/v1/chat/completions");
      cfg.flags.tom = false;
      cfg.flags.verify = false;
      cfg.agent_timeout_seconds = 0.2;
      const auto id = m.Create(cfg);
      std::optional<Event> agent_event;
      for (int i = 0; i < 40 && !agent_event; ++i) {
        for (const auto& e : m.EventsSince(id, 0)) {
          if (e.type == "agent_action") agent_event = e;
        }
        if (!agent_event) std::this_thread::sleep_for(50ms);
      }
      REQUIRE(agent_event.has_value());
      CHECK(agent_event->data["timed_out"] == true);
      CHECK(agent_event->data["fallback"] == true);
      CHECK(agent_event->data["label"] == "Stay in current Room");
      std::this_thread::sleep_for(1500ms);  // let the abandoned call finish
      m.Shutdown();
    }
    slow.stop();
    th.join();
  }
}
