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

#include "coord_arena/pursuit.h"

#include <algorithm>
#include <deque>
#include <sstream>

#include "coord_arena/errors.h"

namespace coord_arena::pursuit {
namespace {

int ParseInt(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw MalformedMap("line " + std::to_string(line_no) + ": expected integer, got '" + tok + "'");
  }
}

bool Active(const PursuitState& s, int p) { return !s.downed[p] && !s.escaped[p]; }

bool AgentIn(const PursuitState& s, int room) {
  for (int p = 0; p < 2; ++p) {
    if (Active(s, p) && s.agent_rooms[p] == room) return true;
  }
  return false;
}

}  // namespace

bool RoomGraph::HasRoom(int room) const { return std::binary_search(rooms.begin(), rooms.end(), room); }

std::optional<int> RoomGraph::DoorBetween(int a, int b) const {
  for (std::size_t i = 0; i < doors.size(); ++i) {
    if ((doors[i].a == a && doors[i].b == b) || (doors[i].a == b && doors[i].b == a)) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

RoomGraph ParseMap(std::string_view text) {
  RoomGraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_agents = false;
  bool have_adversary = false;
  std::vector<std::pair<int, std::vector<std::pair<int, int>>>> pending_buttons;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() < n) throw MalformedMap("line " + std::to_string(line_no) + ": too few fields for " + key);
    };
    if (key == "name") {
      need(2);
      g.name = line.substr(line.find("name") + 5);
      while (!g.name.empty() && (g.name.back() == ' ' || g.name.back() == '\r')) g.name.pop_back();
    } else if (key == "rooms") {
      need(2);
      for (std::size_t i = 1; i < tok.size(); ++i) g.rooms.push_back(ParseInt(tok[i], line_no));
    } else if (key == "door") {
      need(4);
      Door d{ParseInt(tok[1], line_no), ParseInt(tok[2], line_no), true};
      if (tok[3] == "closed") {
        d.open = false;
      } else if (tok[3] != "open") {
        throw MalformedMap("line " + std::to_string(line_no) + ": door state must be open or closed");
      }
      g.doors.push_back(d);
    } else if (key == "button") {
      need(3);
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        auto dash = tok[i].find('-');
        if (dash == std::string::npos) throw MalformedMap("line " + std::to_string(line_no) + ": expected a-b");
        pairs.emplace_back(ParseInt(tok[i].substr(0, dash), line_no), ParseInt(tok[i].substr(dash + 1), line_no));
      }
      pending_buttons.emplace_back(ParseInt(tok[1], line_no), std::move(pairs));
    } else if (key == "gate") {
      need(2);
      g.gate_room = ParseInt(tok[1], line_no);
    } else if (key == "generator") {
      need(2);
      Generator gen{ParseInt(tok[1], line_no), 3};
      if (tok.size() > 2) gen.fixes_required = ParseInt(tok[2], line_no);
      if (gen.fixes_required < 1) throw MalformedMap("generator needs at least one fix");
      g.generators.push_back(gen);
    } else if (key == "agents") {
      need(3);
      g.agent_start = {ParseInt(tok[1], line_no), ParseInt(tok[2], line_no)};
      have_agents = true;
    } else if (key == "adversary") {
      need(2);
      g.adversary_start = ParseInt(tok[1], line_no);
      have_adversary = true;
    } else if (key == "turn_limit") {
      need(3);
      int n = ParseInt(tok[2], line_no);
      if (tok[1] == "capture") {
        g.capture_turn_limit = n;
      } else if (tok[1] == "escape") {
        g.escape_turn_limit = n;
      } else {
        throw MalformedMap("line " + std::to_string(line_no) + ": turn_limit needs capture|escape");
      }
    } else {
      throw MalformedMap("line " + std::to_string(line_no) + ": unknown directive '" + key + "'");
    }
  }
  std::sort(g.rooms.begin(), g.rooms.end());
  if (g.rooms.empty()) throw MalformedMap("map declares no rooms");
  if (std::adjacent_find(g.rooms.begin(), g.rooms.end()) != g.rooms.end()) {
    throw MalformedMap("duplicate room identifier");
  }
  for (const Door& d : g.doors) {
    if (!g.HasRoom(d.a) || !g.HasRoom(d.b) || d.a == d.b) {
      throw MalformedMap("door " + std::to_string(d.a) + "-" + std::to_string(d.b) + " references unknown rooms");
    }
  }
  for (auto& [room, pairs] : pending_buttons) {
    if (!g.HasRoom(room)) throw MalformedMap("button in unknown room " + std::to_string(room));
    for (auto [a, b] : pairs) {
      auto door = g.DoorBetween(a, b);
      if (!door) throw MalformedMap("button references missing door " + std::to_string(a) + "-" + std::to_string(b));
      g.buttons[room].push_back(*door);
    }
  }
  if (g.gate_room && !g.HasRoom(*g.gate_room)) throw MalformedMap("gate in unknown room");
  for (const auto& gen : g.generators) {
    if (!g.HasRoom(gen.room)) throw MalformedMap("generator in unknown room");
  }
  if (!have_agents || !have_adversary) throw MalformedMap("map needs 'agents' and 'adversary' lines");
  for (int r : {g.agent_start[0], g.agent_start[1], g.adversary_start}) {
    if (!g.HasRoom(r)) throw MalformedMap("start in unknown room " + std::to_string(r));
  }
  return g;
}

int PursuitState::turn_limit() const {
  return mode == Mode::kCapture ? graph->capture_turn_limit : graph->escape_turn_limit;
}

PursuitState InitialState(std::shared_ptr<const RoomGraph> graph, Mode mode) {
  PursuitState s;
  s.mode = mode;
  s.agent_rooms = graph->agent_start;
  s.adversary_room = graph->adversary_start;
  for (const Door& d : graph->doors) s.door_open.push_back(d.open);
  s.generator_fixes_done.assign(graph->generators.size(), 0);
  s.gate_open = mode == Mode::kEscape && graph->generators.empty();
  s.graph = std::move(graph);
  return s;
}

std::string PursuitAction::Label() const {
  switch (type) {
    case Type::kMove: return "Move to Room " + std::to_string(room);
    case Type::kStay: return "Stay in current Room";
    case Type::kPress: return "Press button";
    case Type::kFix: return "Fix generator";
    case Type::kExit: return "Exit through the gate";
  }
  return {};
}

std::optional<PursuitAction> ParseActionLabel(std::string_view label) {
  const std::string s(label);
  const std::string move = "Move to Room ";
  if (s.rfind(move, 0) == 0) {
    try {
      return PursuitAction{PursuitAction::Type::kMove, std::stoi(s.substr(move.size()))};
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  for (auto t : {PursuitAction::Type::kStay, PursuitAction::Type::kPress, PursuitAction::Type::kFix,
                 PursuitAction::Type::kExit}) {
    if (PursuitAction{t, 0}.Label() == s) return PursuitAction{t, 0};
  }
  return std::nullopt;
}

std::vector<int> OpenNeighbors(const PursuitState& state, int room) {
  std::vector<int> out;
  const auto& doors = state.graph->doors;
  for (std::size_t i = 0; i < doors.size(); ++i) {
    if (!state.door_open[i]) continue;
    if (doors[i].a == room) out.push_back(doors[i].b);
    if (doors[i].b == room) out.push_back(doors[i].a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<int, int> Distances(const PursuitState& state, const std::vector<int>& sources) {
  std::map<int, int> dist;
  for (int r : state.graph->rooms) dist[r] = -1;
  std::deque<int> queue;
  for (int s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    for (int n : OpenNeighbors(state, r)) {
      if (dist[n] >= 0) continue;
      dist[n] = dist[r] + 1;
      queue.push_back(n);
    }
  }
  return dist;
}

std::vector<PursuitAction> LegalMoves(const PursuitState& state, int player) {
  std::vector<PursuitAction> out;
  if (state.terminal() || !Active(state, player)) return out;
  const int room = state.agent_rooms[player];
  for (int n : OpenNeighbors(state, room)) out.push_back({PursuitAction::Type::kMove, n});
  if (state.graph->buttons.count(room)) out.push_back({PursuitAction::Type::kPress, 0});
  if (state.mode == Mode::kEscape) {
    const auto& gens = state.graph->generators;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].room == room && state.generator_fixes_done[i] < gens[i].fixes_required) {
        out.push_back({PursuitAction::Type::kFix, 0});
        break;
      }
    }
    if (state.graph->gate_room == room && state.gate_open) out.push_back({PursuitAction::Type::kExit, 0});
  }
  out.push_back({PursuitAction::Type::kStay, 0});
  return out;
}

std::vector<ActionId> LegalActions(const PursuitState& state, int player) {
  const GameKind kind = state.mode == Mode::kCapture ? GameKind::kCapture : GameKind::kEscape;
  std::vector<ActionId> out;
  for (const auto& m : LegalMoves(state, player)) {
    out.push_back(ActionId{kind, static_cast<int>(out.size()), m.Label()});
  }
  return out;
}

bool Cornered(const PursuitState& state) {
  if (AgentIn(state, state.adversary_room)) return true;
  for (int n : OpenNeighbors(state, state.adversary_room)) {
    if (!AgentIn(state, n)) return false;
  }
  return true;
}

int AdversaryPolicy(const PursuitState& state, AdversaryMode mode) {
  const int here = state.adversary_room;
  std::vector<int> agents;
  for (int p = 0; p < 2; ++p) {
    if (Active(state, p)) agents.push_back(state.agent_rooms[p]);
  }
  if (agents.empty()) return here;
  const auto dist = Distances(state, agents);
  if (mode == AdversaryMode::kFlee) {
    // Unreachable rooms count as infinitely far from the agents.
    auto score = [&](int room) {
      int d = dist.at(room);
      return d < 0 ? static_cast<int>(state.graph->rooms.size()) + 1 : d;
    };
    std::vector<int> candidates;
    if (!AgentIn(state, here)) candidates.push_back(here);
    for (int n : OpenNeighbors(state, here)) {
      if (!AgentIn(state, n)) candidates.push_back(n);
    }
    if (candidates.empty()) return here;
    std::sort(candidates.begin(), candidates.end());
    int best = candidates.front();
    for (int c : candidates) {
      if (score(c) > score(best)) best = c;
    }
    return best;
  }
  const int d_here = dist.at(here);
  if (d_here <= 0) return here;
  for (int n : OpenNeighbors(state, here)) {
    if (dist.at(n) == d_here - 1) return n;  // neighbors ascend, so first hit is the smallest id
  }
  return here;
}

PursuitState StepState(const PursuitState& state, const std::array<std::optional<PursuitAction>, 2>& actions) {
  if (state.terminal()) throw IllegalAction("pursuit episode already finished");
  PursuitState s = state;
  for (int p = 0; p < 2; ++p) {
    if (!Active(state, p) || !actions[p]) continue;
    const auto legal = LegalMoves(state, p);
    if (std::find(legal.begin(), legal.end(), *actions[p]) == legal.end()) {
      throw IllegalAction("illegal pursuit action: " + actions[p]->Label());
    }
  }
  for (int p = 0; p < 2; ++p) {
    if (!Active(state, p) || !actions[p]) continue;
    const PursuitAction& a = *actions[p];
    const int room = state.agent_rooms[p];
    switch (a.type) {
      case PursuitAction::Type::kMove: s.agent_rooms[p] = a.room; break;
      case PursuitAction::Type::kStay: break;
      case PursuitAction::Type::kPress:
        for (int door : state.graph->buttons.at(room)) s.door_open[door] = !s.door_open[door];
        break;
      case PursuitAction::Type::kFix: {
        const auto& gens = state.graph->generators;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (gens[i].room == room && s.generator_fixes_done[i] < gens[i].fixes_required) {
            ++s.generator_fixes_done[i];
            break;
          }
        }
        break;
      }
      case PursuitAction::Type::kExit:
        s.escaped[p] = true;
        s.won = true;
        break;
    }
  }
  if (s.mode == Mode::kEscape) {
    bool all = true;
    for (std::size_t i = 0; i < s.graph->generators.size(); ++i) {
      all = all && s.generator_fixes_done[i] >= s.graph->generators[i].fixes_required;
    }
    s.gate_open = all;
  }
  if (s.won) {
    ++s.turn;
    return s;
  }
  if (s.mode == Mode::kCapture) {
    if (Cornered(s)) {
      s.captured = true;
      s.won = true;
      ++s.turn;
      return s;
    }
    s.adversary_room = AdversaryPolicy(s, AdversaryMode::kFlee);
  } else {
    s.adversary_room = AdversaryPolicy(s, AdversaryMode::kHunt);
    for (int p = 0; p < 2; ++p) {
      if (Active(s, p) && s.agent_rooms[p] == s.adversary_room) s.downed[p] = true;
    }
    if (s.downed[0] && s.downed[1]) s.lost = true;
  }
  ++s.turn;
  if (!s.won && s.turn >= s.turn_limit()) s.lost = true;
  return s;
}

int Score(const PursuitState& state) { return state.won ? 1 : 0; }

}  // namespace coord_arena::pursuit
