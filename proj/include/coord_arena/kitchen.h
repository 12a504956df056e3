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

#ifndef COORD_ARENA_KITCHEN_H_
#define COORD_ARENA_KITCHEN_H_

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coord_arena/game.h"

namespace coord_arena::kitchen {

inline constexpr int kCookTicks = 20;
inline constexpr int kSoupValue = 20;
inline constexpr int kOnionsPerSoup = 3;
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

enum class Cell : std::uint8_t {
  kFloor,
  kCounter,         // 'X', labelled kN
  kOnionDispenser,  // 'O', oN
  kPlateDispenser,  // 'P', pN
  kCooker,          // 'C', cN
  kDelivery,        // 'D', dN
  kSharedCounter,   // 'S', sN
};

char StationPrefix(Cell kind);

struct Pos {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pos&, const Pos&) = default;
};

enum class Dir : std::uint8_t { kUp, kDown, kLeft, kRight };

Pos Step(Pos p, Dir d);

enum class Primitive : std::uint8_t { kUp, kDown, kLeft, kRight, kInteract, kStay };

std::string_view PrimitiveName(Primitive p);

struct StationRef {
  Cell kind = Cell::kCounter;
  int id = 0;
  friend bool operator==(const StationRef&, const StationRef&) = default;
};

std::string StationName(const StationRef& ref);  // "c0"

class KitchenLayout {
 public:
  int width() const { return width_; }
  int height() const { return height_; }
  const std::string& name() const { return name_; }
  Cell at(Pos p) const;
  bool InBounds(Pos p) const { return p.row >= 0 && p.col >= 0 && p.row < height_ && p.col < width_; }
  bool Walkable(Pos p) const { return InBounds(p) && at(p) == Cell::kFloor; }
  Pos spawn(int player) const { return spawn_[player]; }
  // Station positions for a kind, in row-major numbering order.
  const std::vector<Pos>& stations(Cell kind) const;
  Pos station_pos(const StationRef& ref) const { return stations(ref.kind)[ref.id]; }
  std::optional<StationRef> StationAt(Pos p) const;
  // True when `player` can reach an interaction cell for the station from its
  // spawn, ignoring the partner.
  bool Accessible(int player, const StationRef& ref) const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<std::string>& rows() const { return rows_; }

 private:
  friend KitchenLayout ParseLayout(std::string_view text, std::string name);

  int width_ = 0;
  int height_ = 0;
  std::string name_;
  std::vector<std::string> rows_;
  std::vector<Cell> cells_;
  std::vector<int> station_index_;
  std::array<Pos, 2> spawn_{};
  std::array<std::vector<Pos>, 7> stations_;
  std::array<std::array<std::vector<bool>, 7>, 2> accessible_;
  std::vector<std::string> warnings_;
};

// Legend: X counter, O onion dispenser, P plate dispenser, C cooker,
// D delivery, S shared counter, ' ' floor, '1'/'2' spawn of player 0/1.
// Throws MalformedGrid. Stations no player can reach become warnings.
KitchenLayout ParseLayout(std::string_view text, std::string name = "");

enum class Item : std::uint8_t { kNone, kOnion, kPlate, kSoup };

std::string_view ItemName(Item item);  // "nothing", "onion", "plate", "cooked soup"

struct AgentState {
  Pos pos;
  Dir facing = Dir::kUp;
  Item held = Item::kNone;
  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct Cooker {
  enum class Status : std::uint8_t { kOff, kCooking, kCooked };
  int onions = 0;
  Status status = Status::kOff;
  int remaining = 0;  // ticks left while cooking
  friend bool operator==(const Cooker&, const Cooker&) = default;
};

struct KitchenState {
  std::shared_ptr<const KitchenLayout> layout;
  std::array<AgentState, 2> agents;
  std::vector<Cooker> cookers;
  std::vector<Item> counter_items;  // per kN
  std::vector<Item> shared_items;   // per sN
  int tick = 0;
  int score = 0;

  Item CounterItem(const StationRef& ref) const;
};

KitchenState InitialState(std::shared_ptr<const KitchenLayout> layout);

struct MacroAction {
  enum class Verb : std::uint8_t { kPickUp, kPlaceIn, kPlaceOn, kDeliver, kWait, kMoveAway };
  Verb verb = Verb::kWait;
  Item item = Item::kNone;
  StationRef target;

  std::string Label() const;
  static MacroAction Wait() { return {}; }
  static MacroAction MoveAway() { return {Verb::kMoveAway, Item::kNone, {}}; }
  friend bool operator==(const MacroAction&, const MacroAction&) = default;
};

std::optional<MacroAction> ParseMacroLabel(std::string_view label);

// Distance from a player to a station's interaction cells.
struct Reach {
  enum class Status : std::uint8_t {
    kReachable,     // shortest route free
    kDetour,        // partner blocks the shortest route; a longer one exists
    kBlocked,       // partner blocks every route
    kInaccessible,  // no route even without the partner
  };
  Status status = Status::kInaccessible;
  int distance = kUnreachable;       // with the partner as an obstacle
  int free_distance = kUnreachable;  // ignoring the partner
  bool usable() const { return status == Status::kReachable || status == Status::kDetour; }
};

Reach StationReach(const KitchenState& state, int player, const StationRef& ref);

struct MacroOption {
  MacroAction macro;
  bool feasible = false;
  Reach reach;
};

// Grammar-complete option list in canonical order. Plain counters only appear
// when they hold an item (pick up) or are the closest empty one (place).
std::vector<MacroOption> MacroActions(const KitchenState& state, int player);
std::vector<ActionId> LegalActions(const KitchenState& state, int player);

// Closest empty plain counter usable by `player`.
std::optional<std::pair<StationRef, int>> ClosestEmptyCounter(const KitchenState& state, int player);

// Primitive expansion: shortest path, orient, interact. Throws NoPath.
std::vector<Primitive> Ground(const KitchenState& state, int player, const MacroAction& macro);

// Shortest walking path to any cell from which `target` can be interacted
// with, treating the partner as an obstacle. Moves tried up, down, left, right.
std::optional<std::vector<Dir>> PathToStation(const KitchenState& state, int player, Pos target,
                                              bool partner_blocks = true);

KitchenState Tick(const KitchenState& state, std::array<Primitive, 2> moves);

}  // namespace coord_arena::kitchen

#endif  // COORD_ARENA_KITCHEN_H_
