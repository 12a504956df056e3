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
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "coord_arena/envs.h"
#include "coord_arena/errors.h"
#include "coord_arena/pursuit.h"
#include "coord_arena/scripted.h"
#include "doctest.h"

using namespace coord_arena;
using namespace coord_arena::pursuit;

namespace {

std::shared_ptr<const RoomGraph> Map(const std::string& text) { return std::make_shared<const RoomGraph>(ParseMap(text)); }

std::set<std::string> Labels(const PursuitState& s, int p) {
  std::set<std::string> out;
  for (const auto& a : LegalMoves(s, p)) out.insert(a.Label());
  return out;
}

// Open-door adjacency read straight from the door list.
std::map<int, std::vector<int>> Adjacency(const PursuitState& s) {
  std::map<int, std::vector<int>> adj;
  for (std::size_t i = 0; i < s.graph->doors.size(); ++i) {
    if (!s.door_open[i]) continue;
    adj[s.graph->doors[i].a].push_back(s.graph->doors[i].b);
    adj[s.graph->doors[i].b].push_back(s.graph->doors[i].a);
  }
  return adj;
}

std::map<int, int> BfsFrom(const PursuitState& s, std::vector<int> sources) {
  auto adj = Adjacency(s);
  std::map<int, int> d;
  std::deque<int> q;
  for (int r : sources) {
    d[r] = 0;
    q.push_back(r);
  }
  while (!q.empty()) {
    int r = q.front();
    q.pop_front();
    for (int n : adj[r]) {
      if (d.count(n)) continue;
      d[n] = d[r] + 1;
      q.push_back(n);
    }
  }
  return d;
}

// The adversary is cornered when it shares a room with an agent or every
// open-door move (and staying) leaves it in or next to an agent-free escape.
bool CorneredOracle(const PursuitState& s) {
  std::set<int> agents(s.agent_rooms.begin(), s.agent_rooms.end());
  if (agents.count(s.adversary_room)) return true;
  auto adj = Adjacency(s);
  for (int n : adj[s.adversary_room]) {
    if (!agents.count(n)) return false;
  }
  return true;
}

const char* kLine =
    "name line\n"
    "rooms 1 2 3 4 5\n"
    "door 1 2 open\n"
    "door 2 3 open\n"
    "door 3 4 open\n"
    "door 4 5 open\n"
    "agents 1 1\n"
    "adversary 3\n";

}  // namespace

TEST_SUITE("pursuit") {
  TEST_CASE("map parsing and validation") {
    auto g = LoadRoomGraph("grid_3x3");
    CHECK(g->rooms.size() == 9);
    CHECK(g->doors.size() == 12);
    CHECK(g->gate_room == 8);
    CHECK(g->generators.size() == 2);
    CHECK(g->generators[0].fixes_required == 3);
    CHECK_THROWS_AS(ParseMap("rooms 1 2\ndoor 1 3 open\nagents 1 2\nadversary 2\n"), MalformedMap);
    CHECK_THROWS_AS(ParseMap("rooms 1 2\nportal 1 2\n"), MalformedMap);
  }

  TEST_CASE("legal moves follow open doors") {
    auto line = Map(kLine);
    auto s = InitialState(line, Mode::kCapture);
    s.agent_rooms = {2, 4};
    CHECK(Labels(s, 0) == std::set<std::string>{"Move to Room 1", "Move to Room 3", "Stay in current Room"});
    auto grid = InitialState(LoadRoomGraph("grid_3x3"), Mode::kCapture);
    CHECK(grid.agent_rooms[1] == 1);
    CHECK(Labels(grid, 1).count("Move to Room 2") == 0);
    CHECK(Labels(grid, 0) ==
          std::set<std::string>{"Move to Room 1", "Move to Room 5", "Move to Room 9", "Stay in current Room"});
  }

  TEST_CASE("button presses toggle doors and are an involution") {
    auto s = InitialState(LoadRoomGraph("grid_3x3"), Mode::kEscape);
    s.agent_rooms = {5, 6};
    s.adversary_room = 3;
    CHECK(Labels(s, 0).count("Press button") == 1);
    const auto doors = s.door_open;
    const PursuitAction press{PursuitAction::Type::kPress, 0};
    const PursuitAction stay{PursuitAction::Type::kStay, 0};
    auto t = StepState(s, {press, stay});
    const auto d12 = *s.graph->DoorBetween(1, 2);
    CHECK(t.door_open[d12] != doors[d12]);
    t.adversary_room = 3;
    auto u = StepState(t, {press, stay});
    CHECK(u.door_open == doors);
  }

  TEST_CASE("two agents on both sides of a corridor corner the adversary") {
    auto line = Map(kLine);
    auto s = InitialState(line, Mode::kCapture);
    s.agent_rooms = {2, 4};
    s.adversary_room = 3;
    CHECK(CorneredOracle(s));
    CHECK(Cornered(s));
    const PursuitAction stay{PursuitAction::Type::kStay, 0};
    const auto t = StepState(s, {stay, stay});
    CHECK(t.captured);
    CHECK(t.won);
    s.agent_rooms = {1, 4};
    CHECK(Cornered(s) == CorneredOracle(s));
  }

  TEST_CASE("cornering agrees with the brute-force oracle on every placement") {
    for (const char* name : {"grid_3x3", "open_3x3"}) {
      auto s = InitialState(LoadRoomGraph(name), Mode::kCapture);
      for (int a : s.graph->rooms) {
        for (int b : s.graph->rooms) {
          for (int x : s.graph->rooms) {
            s.agent_rooms = {a, b};
            s.adversary_room = x;
            REQUIRE(Cornered(s) == CorneredOracle(s));
          }
        }
      }
    }
  }

  TEST_CASE("flee maximizes distance with smallest-id ties") {
    auto line = Map(kLine);
    auto s = InitialState(line, Mode::kCapture);
    s.agent_rooms = {1, 1};
    s.adversary_room = 3;
    CHECK(AdversaryPolicy(s, AdversaryMode::kFlee) == 4);
    auto star = Map(
        "rooms 1 3 4 5\n"
        "door 1 4 open\n"
        "door 3 4 open\n"
        "door 4 5 open\n"
        "agents 1 1\n"
        "adversary 4\n");
    auto t = InitialState(star, Mode::kCapture);
    CHECK(AdversaryPolicy(t, AdversaryMode::kFlee) == 3);
    // Oracle: the chosen room is at maximal BFS distance from the agents.
    auto grid = InitialState(LoadRoomGraph("open_3x3"), Mode::kCapture);
    for (int x : grid.graph->rooms) {
      grid.adversary_room = x;
      grid.agent_rooms = {6, 1};
      if (x == 6 || x == 1) continue;
      const auto d = BfsFrom(grid, {6, 1});
      const int chosen = AdversaryPolicy(grid, AdversaryMode::kFlee);
      int best = d.at(x);
      auto adj = Adjacency(grid);
      for (int n : adj[x]) best = std::max(best, d.at(n));
      CHECK(d.at(chosen) == best);
    }
  }

  TEST_CASE("hunting ignores downed agents") {
    auto line = Map(kLine);
    auto s = InitialState(line, Mode::kEscape);
    s.agent_rooms = {1, 5};
    s.adversary_room = 3;
    s.downed = {false, true};
    CHECK(AdversaryPolicy(s, AdversaryMode::kHunt) == 2);
    s.downed = {true, false};
    CHECK(AdversaryPolicy(s, AdversaryMode::kHunt) == 4);
    CHECK(LegalMoves(s, 0).empty());
  }

  TEST_CASE("final generator fix opens the gate and exiting wins") {
    auto s = InitialState(LoadRoomGraph("grid_3x3"), Mode::kEscape);
    s.agent_rooms = {1, 8};
    s.adversary_room = 5;
    s.generator_fixes_done = {2, 3};
    CHECK(Labels(s, 0).count("Fix generator") == 1);
    CHECK(Labels(s, 1).count("Exit through the gate") == 0);
    const PursuitAction fix{PursuitAction::Type::kFix, 0};
    const PursuitAction stay{PursuitAction::Type::kStay, 0};
    auto t = StepState(s, {fix, stay});
    CHECK(t.gate_open);
    if (t.terminal()) return;
    t.adversary_room = 5;
    CHECK(Labels(t, 1).count("Exit through the gate") == 1);
    const PursuitAction exit{PursuitAction::Type::kExit, 0};
    auto u = StepState(t, {stay, exit});
    CHECK(u.won);
    CHECK(Score(u) == 1);
  }

  TEST_CASE("greedy agents capture on the open 3x3 map within 12 turns") {
    for (const char* name : {"open_3x3", "grid_3x3"}) {
      EnvConfig ec;
      ec.game = GameKind::kCapture;
      ec.layout = name;
      auto env = MakeEnv(ec);
      ScriptedAgent a("greedy-pursuit"), b("greedy-pursuit");
      Agent* agents[] = {&a, &b};
      const auto r = RunEpisode(*env, agents, 1000, Seed{0});
      CHECK(r.score == 1);
      CHECK(r.steps <= 12);
      CHECK(r.steps <= 81);
    }
  }

  TEST_CASE("illegal actions are rejected") {
    auto s = InitialState(LoadRoomGraph("grid_3x3"), Mode::kCapture);
    const PursuitAction bad{PursuitAction::Type::kMove, 2};
    CHECK_THROWS_AS(StepState(s, {std::nullopt, bad}), IllegalAction);
  }
}
