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

#ifndef COORD_ARENA_PURSUIT_H_
#define COORD_ARENA_PURSUIT_H_

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coord_arena/game.h"

namespace coord_arena::pursuit {

enum class Mode { kCapture, kEscape };

struct Door {
  int a = 0;
  int b = 0;
  bool open = true;
};

struct Generator {
  int room = 0;
  int fixes_required = 3;
};

// Static map description. Room identifiers are arbitrary positive integers.
struct RoomGraph {
  std::string name;
  std::vector<int> rooms;  // sorted
  std::vector<Door> doors;  // initial open/closed state
  std::map<int, std::vector<int>> buttons;  // room -> indices into doors
  std::optional<int> gate_room;
  std::vector<Generator> generators;
  std::array<int, 2> agent_start{};
  int adversary_start = 0;
  int capture_turn_limit = 40;
  int escape_turn_limit = 50;

  bool HasRoom(int room) const;
  std::optional<int> DoorBetween(int a, int b) const;
};

// Declarative map text, one directive per line ('#' starts a comment):
//   name <text>
//   rooms <id> <id> ...
//   door <a> <b> open|closed
//   button <room> <a>-<b> [<a>-<b> ...]
//   gate <room>
//   generator <room> [fixes]
//   agents <room> <room>
//   adversary <room>
//   turn_limit capture|escape <n>
// Throws MalformedMap.
RoomGraph ParseMap(std::string_view text);

struct PursuitState {
  std::shared_ptr<const RoomGraph> graph;
  Mode mode = Mode::kCapture;
  std::array<int, 2> agent_rooms{};
  int adversary_room = 0;
  std::vector<bool> door_open;
  std::vector<int> generator_fixes_done;
  bool gate_open = false;
  std::array<bool, 2> downed{false, false};
  std::array<bool, 2> escaped{false, false};
  int turn = 0;
  bool captured = false;
  bool won = false;
  bool lost = false;

  int turn_limit() const;
  bool terminal() const { return won || lost; }
};

PursuitState InitialState(std::shared_ptr<const RoomGraph> graph, Mode mode);

struct PursuitAction {
  enum class Type { kMove, kStay, kPress, kFix, kExit };
  Type type = Type::kStay;
  int room = 0;  // kMove target
  std::string Label() const;
  friend bool operator==(const PursuitAction&, const PursuitAction&) = default;
};

std::optional<PursuitAction> ParseActionLabel(std::string_view label);

// Rooms reachable through one open door, ascending.
std::vector<int> OpenNeighbors(const PursuitState& state, int room);
// Shortest path lengths over open doors from `sources`; -1 when unreachable.
std::map<int, int> Distances(const PursuitState& state, const std::vector<int>& sources);

std::vector<PursuitAction> LegalMoves(const PursuitState& state, int player);
std::vector<ActionId> LegalActions(const PursuitState& state, int player);

enum class AdversaryMode { kFlee, kHunt };
// Room the adversary moves to next.
int AdversaryPolicy(const PursuitState& state, AdversaryMode mode);

// True when the adversary shares a room with an active agent or every
// open-door neighbor holds an agent.
bool Cornered(const PursuitState& state);

// Resolves one joint step. `actions[p]` is ignored for downed or escaped
// players. Throws IllegalAction.
PursuitState StepState(const PursuitState& state, const std::array<std::optional<PursuitAction>, 2>& actions);

int Score(const PursuitState& state);  // 1 for a win, 0 otherwise

}  // namespace coord_arena::pursuit

#endif  // COORD_ARENA_PURSUIT_H_
