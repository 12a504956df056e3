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

#ifndef COORD_ARENA_SERVICE_H_
#define COORD_ARENA_SERVICE_H_

#include <array>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "coord_arena/cac_agent.h"
#include "coord_arena/game.h"
#include "coord_arena/harness.h"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace coord_arena::service {

inline constexpr int kSchemaVersion = 1;

struct SessionConfig {
  GameKind game = GameKind::kHanabi;
  std::string layout;
  std::array<std::string, 2> seats{"human", "scripted:rule-hanabi"};  // "human" or an agent spec
  std::uint64_t seed = 0;
  PlayerNames names = DefaultNames();
  AblationFlags flags;
  int horizon = kDefaultKitchenHorizon;
  double agent_timeout_seconds = 120.0;
};

SessionConfig SessionConfigFromJson(const nlohmann::json& j);

struct Event {
  std::int64_t id = 0;  // 1-based, dense
  std::string type;
  int seat = -1;
  std::string text;
  nlohmann::json data;
  nlohmann::json ToJson() const;
};

class Session;

// Owns all live sessions. Every mutation of a session happens under that
// session's lock; agent seats are driven by one worker thread per session.
class SessionManager {
 public:
  SessionManager();
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  std::string Create(const SessionConfig& config);
  nlohmann::json List() const;
  nlohmann::json View(const std::string& id, int seat) const;
  // Submits `label` (which must sit at `index` of the seat's legal list at
  // `state_version`) and returns the ack with the events it produced.
  nlohmann::json Submit(const std::string& id, int seat, int index, const std::string& label,
                        std::optional<std::int64_t> state_version);
  // Events with id > cursor, waiting up to `wait` for at least one.
  std::vector<Event> EventsSince(const std::string& id, std::int64_t cursor,
                                 std::chrono::milliseconds wait = std::chrono::milliseconds(0)) const;
  nlohmann::json Trace(const std::string& id, std::int64_t event_id) const;
  bool Finished(const std::string& id) const;
  // Blocks until the session finishes or the timeout passes.
  bool WaitFinished(const std::string& id, std::chrono::milliseconds timeout) const;
  void Shutdown();

 private:
  std::shared_ptr<Session> Find(const std::string& id) const;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::int64_t next_id_ = 1;
};

nlohmann::json TraceToJson(const DecisionTrace& trace);

// Registers the HTTP routes:
//   POST /sessions                       create
//   GET  /sessions                       list
//   GET  /sessions/{id}/view?seat=N      seat-scoped view
//   POST /sessions/{id}/actions          {"seat", "index", "label", "state_version"}
//   GET  /sessions/{id}/events?cursor=N  server-sent events (format=json to poll)
//   GET  /sessions/{id}/traces/{event}   decision trace of an agent action
void Mount(httplib::Server& server, SessionManager& manager);

}  // namespace coord_arena::service

#endif  // COORD_ARENA_SERVICE_H_
