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

#include "coord_arena/service.h"

#include <algorithm>
#include <future>

#include "coord_arena/envs.h"
#include "coord_arena/errors.h"
#include "httplib.h"

namespace coord_arena::service {

using nlohmann::json;

namespace {

struct SeatAgent {
  std::shared_ptr<Agent> agent;
  std::shared_ptr<std::mutex> mu = std::make_shared<std::mutex>();  // one Decide at a time
};

std::string ErrorName(const std::exception& e) {
  if (dynamic_cast<const UnknownSession*>(&e)) return "UnknownSession";
  if (dynamic_cast<const NotYourTurn*>(&e)) return "NotYourTurn";
  if (dynamic_cast<const StaleAction*>(&e)) return "StaleAction";
  if (dynamic_cast<const ConfigError*>(&e)) return "ValidationError";
  if (dynamic_cast<const MalformedGrid*>(&e)) return "ValidationError";
  if (dynamic_cast<const MalformedMap*>(&e)) return "ValidationError";
  if (dynamic_cast<const json::exception*>(&e)) return "ValidationError";
  return "InternalError";
}

int ErrorStatus(const std::string& name) {
  if (name == "UnknownSession") return 404;
  if (name == "NotYourTurn" || name == "StaleAction") return 409;
  if (name == "ValidationError") return 400;
  return 500;
}

}  // namespace

json Event::ToJson() const {
  json j = {{"id", id}, {"type", type}, {"seat", seat}, {"text", text}};
  if (!data.is_null()) j["data"] = data;
  return j;
}

json TraceToJson(const DecisionTrace& t) {
  json calls = json::array();
  for (const auto& c : t.calls) {
    json msgs = json::array();
    for (const auto& m : c.messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
    calls.push_back({{"role", c.role},
                     {"messages", msgs},
                     {"response", c.response},
                     {"latency_seconds", c.latency_seconds},
                     {"note", c.note}});
  }
  json j = {{"calls", calls},           {"rejected", t.rejected},
            {"parse_failures", t.parse_failures}, {"fallback", t.fallback},
            {"fallback_reason", t.fallback_reason}, {"chosen", t.chosen}};
  if (t.tom) {
    j["tom"] = {{"explanation", t.tom->explanation},
                {"clue_suggestion", t.tom->clue_suggestion},
                {"well_formed", t.tom->well_formed}};
  }
  return j;
}

SessionConfig SessionConfigFromJson(const json& j) {
  SessionConfig c;
  c.game = ParseGameKind(j.at("game").get<std::string>());
  c.layout = j.value("layout", std::string());
  const auto seats = j.at("seats");
  if (!seats.is_array() || seats.size() != 2) throw ConfigError("exactly two seats are required");
  c.seats = {seats[0].get<std::string>(), seats[1].get<std::string>()};
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("names")) c.names = j["names"].get<PlayerNames>();
  c.flags.tom = !j.value("no_tom", false);
  c.flags.verify = !j.value("no_verify", false);
  c.flags.include_partner_info = !j.value("omit_partner_info", false);
  c.horizon = j.value("horizon", kDefaultKitchenHorizon);
  c.agent_timeout_seconds = j.value("agent_timeout_seconds", 120.0);
  return c;
}

class Session {
 public:
  Session(std::string id, SessionConfig config) : id_(std::move(id)), config_(std::move(config)) {
    EnvConfig ec;
    ec.game = config_.game;
    ec.layout = config_.layout;
    ec.seed = Seed{config_.seed};
    ec.names = config_.names;
    ec.include_partner_info = config_.flags.include_partner_info;
    ec.horizon = config_.horizon;
    env_ = MakeEnv(ec);
    for (int p = 0; p < 2; ++p) {
      if (config_.seats[p] == "human") continue;
      SeatAgent sa;
      sa.agent = MakeAgent(ParseAgentSpec(config_.seats[p]), config_.flags);
      sa.agent->BeginEpisode(Seed{config_.seed + static_cast<std::uint64_t>(p)}, p);
      agents_[p] = sa;
    }
    std::lock_guard<std::mutex> lock(mu_);
    Append("created", -1, "Session " + id_ + " created",
           {{"game", std::string(GameKindName(config_.game))}, {"seats", config_.seats}, {"seed", config_.seed}});
    Advance();
  }

  ~Session() { Stop(); }

  void Start() { worker_ = std::thread([this] { Work(); }); }

  void Stop() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    if (worker_.joinable()) worker_.join();
  }

  json Summary() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {{"id", id_},
            {"game", std::string(GameKindName(config_.game))},
            {"layout", config_.layout},
            {"seats", config_.seats},
            {"status", Status()},
            {"score", env_->Score()},
            {"cursor", Cursor()}};
  }

  json View(int seat) const {
    if (seat < 0 || seat > 1) throw ConfigError("seat must be 0 or 1");
    std::lock_guard<std::mutex> lock(mu_);
    json v = SeatView(*env_, seat);
    v["version"] = kSchemaVersion;
    v["session"] = id_;
    v["status"] = Status();
    v["state_version"] = state_version_;
    v["cursor"] = Cursor();
    v["occupant"] = config_.seats[seat];
    const bool turn = CanAct(seat);
    v["your_turn"] = turn && !agents_[seat];
    json legal = json::array();
    if (turn && !agents_[seat]) {
      for (const auto& a : env_->LegalActions(seat)) legal.push_back({{"index", a.index}, {"label", a.label}});
    }
    v["legal_actions"] = legal;
    if (env_->IsTerminal()) {
      v["final_score"] = env_->Score();
      json transcript = json::array();
      for (const auto& e : events_) {
        if (e.type == "action" || e.type == "agent_action") transcript.push_back(e.ToJson());
      }
      v["transcript"] = transcript;
    }
    return v;
  }

  json Submit(int seat, int index, const std::string& label, std::optional<std::int64_t> version) {
    if (seat < 0 || seat > 1) throw ConfigError("seat must be 0 or 1");
    std::lock_guard<std::mutex> lock(mu_);
    if (agents_[seat]) throw NotYourTurn("seat " + std::to_string(seat) + " is played by an agent");
    if (env_->IsTerminal()) throw NotYourTurn("the game is over");
    if (!CanAct(seat)) throw NotYourTurn("it is not seat " + std::to_string(seat) + "'s turn");
    if (version && *version != state_version_) throw StaleAction("the state changed since that view");
    const auto legal = env_->LegalActions(seat);
    if (index < 0 || index >= static_cast<int>(legal.size()) || legal[index].label != label) {
      throw StaleAction("action is not in the current legal list: " + label);
    }
    const std::int64_t before = Cursor();
    pending_[seat] = legal[index];
    Advance();
    cv_.notify_all();
    json evs = json::array();
    for (const auto& e : events_) {
      if (e.id > before) evs.push_back(e.ToJson());
    }
    return {{"version", kSchemaVersion}, {"accepted", true}, {"state_version", state_version_}, {"events", evs}};
  }

  std::vector<Event> Since(std::int64_t cursor, std::chrono::milliseconds wait) const {
    std::unique_lock<std::mutex> lock(mu_);
    if (wait.count() > 0) {
      cv_.wait_for(lock, wait, [&] { return Cursor() > cursor || stop_ || env_->IsTerminal(); });
    }
    std::vector<Event> out;
    for (const auto& e : events_) {
      if (e.id > cursor) out.push_back(e);
    }
    return out;
  }

  json Trace(std::int64_t event_id) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = traces_.find(event_id);
    if (it == traces_.end() || !it->second) throw UnknownSession("no trace for event " + std::to_string(event_id));
    return TraceToJson(*it->second);
  }

  bool Finished() const {
    std::lock_guard<std::mutex> lock(mu_);
    return env_->IsTerminal();
  }

  bool WaitFinished(std::chrono::milliseconds timeout) const {
    std::unique_lock<std::mutex> lock(mu_);
    return cv_.wait_for(lock, timeout, [&] { return env_->IsTerminal(); });
  }

 private:
  std::int64_t Cursor() const { return events_.empty() ? 0 : events_.back().id; }

  std::string Status() const {
    if (env_->IsTerminal()) return "finished";
    for (int p : env_->PlayersToAct()) {
      if (!agents_[p] && !pending_.count(p)) return "waiting";
    }
    return "live";
  }

  bool CanAct(int seat) const {
    if (env_->IsTerminal() || pending_.count(seat)) return false;
    const auto acting = env_->PlayersToAct();
    return std::find(acting.begin(), acting.end(), seat) != acting.end();
  }

  void Append(const std::string& type, int seat, const std::string& text, json data = nullptr) {
    Event e;
    e.id = Cursor() + 1;
    e.type = type;
    e.seat = seat;
    e.text = text;
    e.data = std::move(data);
    events_.push_back(std::move(e));
  }

  // Steps the engine while every acting seat has a pending decision.
  void Advance() {
    while (!env_->IsTerminal()) {
      const auto acting = env_->PlayersToAct();
      if (!std::all_of(acting.begin(), acting.end(), [&](int p) { return pending_.count(p) > 0; })) break;
      std::vector<std::pair<int, ActionId>> decisions;
      json dj = json::array();
      for (int p : acting) {
        decisions.emplace_back(p, pending_.at(p));
        dj.push_back({{"seat", p}, {"label", pending_.at(p).label}});
      }
      const auto step_events = env_->Step(decisions);
      for (const auto& [p, a] : decisions) last_action_[p] = a;
      pending_.clear();
      ++state_version_;
      bool first = true;
      for (const auto& se : step_events) {
        json data = nullptr;
        if (first) data = {{"step", env_->StepCount()}, {"decisions", dj}};
        first = false;
        Append(se.type, se.player, se.text, data);
      }
    }
    if (env_->IsTerminal() && !finished_logged_) {
      finished_logged_ = true;
      Append("finished", -1, "Final score: " + std::to_string(env_->Score()), {{"score", env_->Score()}});
    }
    cv_.notify_all();
  }

  bool AgentNeeded() const {
    if (env_->IsTerminal()) return false;
    for (int p : env_->PlayersToAct()) {
      if (agents_[p] && !pending_.count(p)) return true;
    }
    return false;
  }

  void Work() {
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      cv_.wait(lock, [&] { return stop_ || AgentNeeded(); });
      if (stop_) return;
      int seat = -1;
      for (int p : env_->PlayersToAct()) {
        if (agents_[p] && !pending_.count(p)) {
          seat = p;
          break;
        }
      }
      std::shared_ptr<GameEnv> snapshot = env_->Clone();
      const auto legal = env_->LegalActions(seat);
      const auto partner_last = last_action_[1 - seat];
      const std::int64_t version = state_version_;
      const SeatAgent slot = *agents_[seat];
      lock.unlock();

      auto promise = std::make_shared<std::promise<Decision>>();
      auto future = promise->get_future();
      std::thread([slot, snapshot, seat, legal, partner_last, promise] {
        std::lock_guard<std::mutex> guard(*slot.mu);
        try {
          promise->set_value(slot.agent->Decide(*snapshot, seat, legal, partner_last));
        } catch (...) {
          promise->set_exception(std::current_exception());
        }
      }).detach();
      Decision d;
      bool timed_out = false;
      std::string error;
      const auto timeout = std::chrono::duration<double>(config_.agent_timeout_seconds);
      if (future.wait_for(timeout) == std::future_status::timeout) {
        timed_out = true;
      } else {
        try {
          d = future.get();
        } catch (const std::exception& e) {
          error = e.what();
        }
      }
      if (timed_out || !error.empty()) {
        d = Decision{};
        d.action = snapshot->SafestAction(seat, legal);
        d.fallback = true;
      }

      lock.lock();
      if (stop_) return;
      if (state_version_ != version || pending_.count(seat)) continue;
      auto resolved = FindAction(legal, d.action.label);
      if (!resolved) resolved = snapshot->SafestAction(seat, legal);
      json data = {{"label", resolved->label},
                   {"index", resolved->index},
                   {"fallback", d.fallback},
                   {"timed_out", timed_out},
                   {"latency_seconds", d.latency_seconds}};
      if (!error.empty()) data["error"] = error;
      const std::int64_t event_id = Cursor() + 1;
      if (d.trace) {
        data["trace_id"] = event_id;
        traces_[event_id] = d.trace;
      }
      Append("agent_action", seat, env_->names()[seat] + " (" + config_.seats[seat] + "): " + resolved->label, data);
      pending_[seat] = *resolved;
      Advance();
    }
  }

  std::string id_;
  SessionConfig config_;
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::unique_ptr<GameEnv> env_;
  std::vector<Event> events_;
  std::map<int, ActionId> pending_;
  std::array<std::optional<ActionId>, 2> last_action_;
  std::array<std::optional<SeatAgent>, 2> agents_;
  std::map<std::int64_t, std::shared_ptr<const DecisionTrace>> traces_;
  std::int64_t state_version_ = 0;
  bool finished_logged_ = false;
  bool stop_ = false;
  std::thread worker_;
};

// ---------------------------------------------------------------- Manager

SessionManager::SessionManager() = default;

SessionManager::~SessionManager() { Shutdown(); }

void SessionManager::Shutdown() {
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard<std::mutex> lock(mu_);
    sessions.swap(sessions_);
  }
  for (auto& [id, s] : sessions) s->Stop();
}

std::shared_ptr<Session> SessionManager::Find(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession("unknown session: " + id);
  return it->second;
}

std::string SessionManager::Create(const SessionConfig& config) {
  for (const auto& seat : config.seats) {
    if (seat != "human") ParseAgentSpec(seat);
  }
  if (config.game != GameKind::kHanabi) {
    const std::string name = config.layout.empty() ? DefaultLayout(config.game) : config.layout;
    if (config.game == GameKind::kKitchen) {
      LoadKitchenLayout(name);
    } else {
      LoadRoomGraph(name);
    }
  }
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    id = "s" + std::to_string(next_id_++);
  }
  auto session = std::make_shared<Session>(id, config);
  session->Start();
  std::lock_guard<std::mutex> lock(mu_);
  sessions_[id] = session;
  return id;
}

json SessionManager::List() const {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  json out = json::array();
  for (const auto& s : all) out.push_back(s->Summary());
  return {{"version", kSchemaVersion}, {"sessions", out}};
}

json SessionManager::View(const std::string& id, int seat) const { return Find(id)->View(seat); }

json SessionManager::Submit(const std::string& id, int seat, int index, const std::string& label,
                            std::optional<std::int64_t> state_version) {
  return Find(id)->Submit(seat, index, label, state_version);
}

std::vector<Event> SessionManager::EventsSince(const std::string& id, std::int64_t cursor,
                                               std::chrono::milliseconds wait) const {
  return Find(id)->Since(cursor, wait);
}

json SessionManager::Trace(const std::string& id, std::int64_t event_id) const { return Find(id)->Trace(event_id); }

bool SessionManager::Finished(const std::string& id) const { return Find(id)->Finished(); }

bool SessionManager::WaitFinished(const std::string& id, std::chrono::milliseconds timeout) const {
  return Find(id)->WaitFinished(timeout);
}

// ---------------------------------------------------------------- HTTP

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
void Guarded(httplib::Response& res, F&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    const std::string name = ErrorName(e);
    Reply(res, ErrorStatus(name), {{"version", kSchemaVersion}, {"error", name}, {"message", e.what()}});
  }
}

std::int64_t ParseInt(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + ": " + s);
  }
}

std::string SseFrame(const Event& e) {
  return "id: " + std::to_string(e.id) + "\nevent: " + e.type + "\ndata: " + e.ToJson().dump() + "\n\n";
}

}  // namespace

void Mount(httplib::Server& server, SessionManager& manager) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

  server.Post("/sessions", [&manager](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const std::string id = manager.Create(SessionConfigFromJson(json::parse(req.body)));
      Reply(res, 201, {{"version", kSchemaVersion}, {"id", id}});
    });
  });

  server.Get("/sessions", [&manager](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, manager.List()); });
  });

  server.Get(R"(/sessions/([^/]+)/view)", [&manager](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const int seat = req.has_param("seat") ? static_cast<int>(ParseInt(req.get_param_value("seat"), "seat")) : 0;
      Reply(res, 200, manager.View(req.matches[1], seat));
    });
  });

  server.Post(R"(/sessions/([^/]+)/actions)", [&manager](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const auto body = json::parse(req.body);
      std::optional<std::int64_t> version;
      if (body.contains("state_version")) version = body["state_version"].get<std::int64_t>();
      Reply(res, 200,
            manager.Submit(req.matches[1], body.at("seat").get<int>(), body.at("index").get<int>(),
                           body.at("label").get<std::string>(), version));
    });
  });

  server.Get(R"(/sessions/([^/]+)/traces/(\d+))", [&manager](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      json t = manager.Trace(req.matches[1], ParseInt(req.matches[2], "event id"));
      t["version"] = kSchemaVersion;
      Reply(res, 200, t);
    });
  });

  server.Get(R"(/sessions/([^/]+)/events)", [&manager](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const std::string id = req.matches[1];
      std::int64_t cursor = 0;
      if (req.has_param("cursor")) {
        cursor = ParseInt(req.get_param_value("cursor"), "cursor");
      } else if (req.has_header("Last-Event-ID")) {
        cursor = ParseInt(req.get_header_value("Last-Event-ID"), "Last-Event-ID");
      }
      manager.EventsSince(id, cursor);  // validates the id before streaming
      if (req.get_param_value("format") == "json") {
        const auto wait = req.has_param("wait_ms") ? ParseInt(req.get_param_value("wait_ms"), "wait_ms") : 0;
        json evs = json::array();
        for (const auto& e : manager.EventsSince(id, cursor, std::chrono::milliseconds(wait))) {
          evs.push_back(e.ToJson());
        }
        Reply(res, 200, {{"version", kSchemaVersion}, {"events", evs}});
        return;
      }
      auto position = std::make_shared<std::int64_t>(cursor);
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream", [&manager, id, position](std::size_t, httplib::DataSink& sink) {
            try {
              const auto events = manager.EventsSince(id, *position, std::chrono::milliseconds(1000));
              if (events.empty()) {
                if (manager.Finished(id)) {
                  sink.done();
                  return true;
                }
                const std::string ping = ": keep-alive\n\n";
                return sink.write(ping.data(), ping.size());
              }
              for (const auto& e : events) {
                const std::string frame = SseFrame(e);
                if (!sink.write(frame.data(), frame.size())) return false;
                *position = e.id;
              }
              return true;
            } catch (const std::exception&) {
              sink.done();
              return true;
            }
          });
    });
  });
}

}  // namespace coord_arena::service
