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

#include "coord_arena/kitchen.h"

#include <algorithm>
#include <deque>
#include <sstream>

#include "coord_arena/errors.h"

namespace coord_arena::kitchen {
namespace {

constexpr std::array<Dir, 4> kDirs = {Dir::kUp, Dir::kDown, Dir::kLeft, Dir::kRight};
constexpr std::array<Cell, 6> kStationKinds = {Cell::kOnionDispenser, Cell::kPlateDispenser,
                                               Cell::kCooker,         Cell::kDelivery,
                                               Cell::kSharedCounter,  Cell::kCounter};

int KindIndex(Cell c) { return static_cast<int>(c); }

struct BfsResult {
  std::vector<int> dist;
  std::vector<int> parent;      // cell index, -1 for the root
  std::vector<Dir> parent_dir;  // direction taken to enter the cell
};

BfsResult Bfs(const KitchenLayout& layout, Pos start, std::optional<Pos> obstacle) {
  const int n = layout.width() * layout.height();
  BfsResult r{std::vector<int>(n, kUnreachable), std::vector<int>(n, -1), std::vector<Dir>(n, Dir::kUp)};
  auto idx = [&](Pos p) { return p.row * layout.width() + p.col; };
  std::deque<Pos> queue;
  r.dist[idx(start)] = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    Pos p = queue.front();
    queue.pop_front();
    for (Dir d : kDirs) {
      Pos q = Step(p, d);
      if (!layout.Walkable(q)) continue;
      if (obstacle && q == *obstacle) continue;
      if (r.dist[idx(q)] != kUnreachable) continue;
      r.dist[idx(q)] = r.dist[idx(p)] + 1;
      r.parent[idx(q)] = idx(p);
      r.parent_dir[idx(q)] = d;
      queue.push_back(q);
    }
  }
  return r;
}

int DistanceToTarget(const KitchenLayout& layout, const BfsResult& bfs, Pos target) {
  int best = kUnreachable;
  for (Dir d : kDirs) {
    Pos q = Step(target, d);
    if (!layout.Walkable(q)) continue;
    best = std::min(best, bfs.dist[q.row * layout.width() + q.col]);
  }
  return best;
}

std::optional<Dir> DirBetween(Pos from, Pos to) {
  for (Dir d : kDirs) {
    if (Step(from, d) == to) return d;
  }
  return std::nullopt;
}

Primitive ToPrimitive(Dir d) {
  switch (d) {
    case Dir::kUp: return Primitive::kUp;
    case Dir::kDown: return Primitive::kDown;
    case Dir::kLeft: return Primitive::kLeft;
    case Dir::kRight: return Primitive::kRight;
  }
  return Primitive::kStay;
}

std::optional<Dir> ToDir(Primitive p) {
  switch (p) {
    case Primitive::kUp: return Dir::kUp;
    case Primitive::kDown: return Dir::kDown;
    case Primitive::kLeft: return Dir::kLeft;
    case Primitive::kRight: return Dir::kRight;
    default: return std::nullopt;
  }
}

std::string_view LabelItem(Item item) {
  switch (item) {
    case Item::kOnion: return "onion";
    case Item::kPlate: return "plate";
    case Item::kSoup: return "soup";
    case Item::kNone: break;
  }
  return "nothing";
}

std::optional<Item> ParseLabelItem(std::string_view s) {
  if (s == "onion") return Item::kOnion;
  if (s == "plate") return Item::kPlate;
  if (s == "soup") return Item::kSoup;
  return std::nullopt;
}

std::optional<StationRef> ParseStationName(std::string_view s) {
  if (s.size() < 2) return std::nullopt;
  Cell kind;
  switch (s[0]) {
    case 'o': kind = Cell::kOnionDispenser; break;
    case 'p': kind = Cell::kPlateDispenser; break;
    case 'c': kind = Cell::kCooker; break;
    case 'd': kind = Cell::kDelivery; break;
    case 's': kind = Cell::kSharedCounter; break;
    case 'k': kind = Cell::kCounter; break;
    default: return std::nullopt;
  }
  int id = 0;
  for (char ch : s.substr(1)) {
    if (ch < '0' || ch > '9') return std::nullopt;
    id = id * 10 + (ch - '0');
  }
  return StationRef{kind, id};
}

Item& CounterSlot(KitchenState& s, const StationRef& ref) {
  return ref.kind == Cell::kSharedCounter ? s.shared_items[ref.id] : s.counter_items[ref.id];
}

void Interact(const KitchenLayout& layout, KitchenState& s, int player) {
  AgentState& agent = s.agents[player];
  Pos front = Step(agent.pos, agent.facing);
  auto ref = layout.StationAt(front);
  if (!ref) return;
  switch (ref->kind) {
    case Cell::kOnionDispenser:
      if (agent.held == Item::kNone) agent.held = Item::kOnion;
      break;
    case Cell::kPlateDispenser:
      if (agent.held == Item::kNone) agent.held = Item::kPlate;
      break;
    case Cell::kCooker: {
      Cooker& cooker = s.cookers[ref->id];
      if (agent.held == Item::kOnion && cooker.status == Cooker::Status::kOff &&
          cooker.onions < kOnionsPerSoup) {
        agent.held = Item::kNone;
        if (++cooker.onions == kOnionsPerSoup) {
          cooker.status = Cooker::Status::kCooking;
          cooker.remaining = kCookTicks;
        }
      } else if (agent.held == Item::kPlate && cooker.status == Cooker::Status::kCooked) {
        agent.held = Item::kSoup;
        cooker = Cooker{};
      }
      break;
    }
    case Cell::kDelivery:
      if (agent.held == Item::kSoup) {
        agent.held = Item::kNone;
        s.score += kSoupValue;
      }
      break;
    case Cell::kCounter:
    case Cell::kSharedCounter: {
      Item& slot = CounterSlot(s, *ref);
      if (agent.held != Item::kNone && slot == Item::kNone) {
        slot = agent.held;
        agent.held = Item::kNone;
      } else if (agent.held == Item::kNone && slot != Item::kNone) {
        agent.held = slot;
        slot = Item::kNone;
      }
      break;
    }
    case Cell::kFloor: break;
  }
}

bool Feasible(const KitchenState& s, int player, const MacroAction& m, const Reach& reach) {
  const Item held = s.agents[player].held;
  switch (m.verb) {
    case MacroAction::Verb::kWait:
    case MacroAction::Verb::kMoveAway: return true;
    default: break;
  }
  if (!reach.usable()) return false;
  switch (m.verb) {
    case MacroAction::Verb::kPickUp:
      // Soup leaves a cooker only onto a held plate.
      if (m.target.kind == Cell::kCooker) {
        return held == Item::kPlate && s.cookers[m.target.id].status == Cooker::Status::kCooked;
      }
      if (held != Item::kNone) return false;
      if (m.target.kind == Cell::kOnionDispenser) return m.item == Item::kOnion;
      if (m.target.kind == Cell::kPlateDispenser) return m.item == Item::kPlate;
      return s.CounterItem(m.target) == m.item;
    case MacroAction::Verb::kPlaceIn: {
      const Cooker& c = s.cookers[m.target.id];
      return held == Item::kOnion && c.status == Cooker::Status::kOff && c.onions < kOnionsPerSoup;
    }
    case MacroAction::Verb::kPlaceOn:
      return held == m.item && s.CounterItem(m.target) == Item::kNone;
    case MacroAction::Verb::kDeliver: return held == Item::kSoup;
    default: return false;
  }
}

}  // namespace

char StationPrefix(Cell kind) {
  switch (kind) {
    case Cell::kCounter: return 'k';
    case Cell::kOnionDispenser: return 'o';
    case Cell::kPlateDispenser: return 'p';
    case Cell::kCooker: return 'c';
    case Cell::kDelivery: return 'd';
    case Cell::kSharedCounter: return 's';
    case Cell::kFloor: break;
  }
  return '?';
}

Pos Step(Pos p, Dir d) {
  switch (d) {
    case Dir::kUp: return {p.row - 1, p.col};
    case Dir::kDown: return {p.row + 1, p.col};
    case Dir::kLeft: return {p.row, p.col - 1};
    case Dir::kRight: return {p.row, p.col + 1};
  }
  return p;
}

std::string_view PrimitiveName(Primitive p) {
  switch (p) {
    case Primitive::kUp: return "up";
    case Primitive::kDown: return "down";
    case Primitive::kLeft: return "left";
    case Primitive::kRight: return "right";
    case Primitive::kInteract: return "interact";
    case Primitive::kStay: return "stay";
  }
  return "stay";
}

std::string StationName(const StationRef& ref) {
  return std::string(1, StationPrefix(ref.kind)) + std::to_string(ref.id);
}

Cell KitchenLayout::at(Pos p) const {
  if (!InBounds(p)) return Cell::kCounter;
  return cells_[p.row * width_ + p.col];
}

const std::vector<Pos>& KitchenLayout::stations(Cell kind) const { return stations_[KindIndex(kind)]; }

std::optional<StationRef> KitchenLayout::StationAt(Pos p) const {
  if (!InBounds(p)) return std::nullopt;
  Cell c = at(p);
  if (c == Cell::kFloor) return std::nullopt;
  return StationRef{c, station_index_[p.row * width_ + p.col]};
}

bool KitchenLayout::Accessible(int player, const StationRef& ref) const {
  return accessible_[player][KindIndex(ref.kind)][ref.id];
}

KitchenLayout ParseLayout(std::string_view text, std::string name) {
  KitchenLayout layout;
  layout.name_ = std::move(name);
  std::vector<std::string> rows;
  {
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      rows.push_back(line);
    }
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw MalformedGrid("empty layout");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw MalformedGrid("row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                          ", expected " + std::to_string(width));
    }
  }
  layout.width_ = static_cast<int>(width);
  layout.height_ = static_cast<int>(rows.size());
  layout.rows_ = rows;
  layout.cells_.assign(width * rows.size(), Cell::kFloor);
  layout.station_index_.assign(width * rows.size(), -1);
  std::array<bool, 2> have_spawn{false, false};
  for (int r = 0; r < layout.height_; ++r) {
    for (int c = 0; c < layout.width_; ++c) {
      const char ch = rows[r][c];
      Cell cell;
      switch (ch) {
        case ' ': cell = Cell::kFloor; break;
        case 'X': cell = Cell::kCounter; break;
        case 'O': cell = Cell::kOnionDispenser; break;
        case 'P': cell = Cell::kPlateDispenser; break;
        case 'C': cell = Cell::kCooker; break;
        case 'D': cell = Cell::kDelivery; break;
        case 'S': cell = Cell::kSharedCounter; break;
        case '1':
        case '2': {
          const int player = ch - '1';
          if (have_spawn[player]) throw MalformedGrid(std::string("duplicate spawn '") + ch + "'");
          have_spawn[player] = true;
          layout.spawn_[player] = Pos{r, c};
          cell = Cell::kFloor;
          break;
        }
        default: throw MalformedGrid(std::string("unknown layout character '") + ch + "'");
      }
      const int i = r * layout.width_ + c;
      layout.cells_[i] = cell;
      if (cell != Cell::kFloor) {
        auto& list = layout.stations_[KindIndex(cell)];
        layout.station_index_[i] = static_cast<int>(list.size());
        list.push_back(Pos{r, c});
      }
    }
  }
  if (!have_spawn[0] || !have_spawn[1]) throw MalformedGrid("layout needs spawn points '1' and '2'");

  for (int p = 0; p < 2; ++p) {
    const BfsResult bfs = Bfs(layout, layout.spawn_[p], std::nullopt);
    for (Cell kind : kStationKinds) {
      const auto& list = layout.stations_[KindIndex(kind)];
      auto& flags = layout.accessible_[p][KindIndex(kind)];
      flags.assign(list.size(), false);
      for (std::size_t i = 0; i < list.size(); ++i) {
        flags[i] = DistanceToTarget(layout, bfs, list[i]) != kUnreachable;
      }
    }
  }
  for (Cell kind : kStationKinds) {
    if (kind == Cell::kCounter) continue;  // wall counters are routinely out of reach
    const auto& list = layout.stations_[KindIndex(kind)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!layout.accessible_[0][KindIndex(kind)][i] && !layout.accessible_[1][KindIndex(kind)][i]) {
        layout.warnings_.push_back("UnreachableStation: " +
                                   StationName(StationRef{kind, static_cast<int>(i)}));
      }
    }
  }
  return layout;
}

std::string_view ItemName(Item item) {
  switch (item) {
    case Item::kNone: return "nothing";
    case Item::kOnion: return "onion";
    case Item::kPlate: return "plate";
    case Item::kSoup: return "cooked soup";
  }
  return "nothing";
}

Item KitchenState::CounterItem(const StationRef& ref) const {
  if (ref.kind == Cell::kSharedCounter) return shared_items[ref.id];
  if (ref.kind == Cell::kCounter) return counter_items[ref.id];
  return Item::kNone;
}

KitchenState InitialState(std::shared_ptr<const KitchenLayout> layout) {
  KitchenState s;
  s.cookers.resize(layout->stations(Cell::kCooker).size());
  s.counter_items.assign(layout->stations(Cell::kCounter).size(), Item::kNone);
  s.shared_items.assign(layout->stations(Cell::kSharedCounter).size(), Item::kNone);
  for (int p = 0; p < 2; ++p) s.agents[p].pos = layout->spawn(p);
  s.layout = std::move(layout);
  return s;
}

std::string MacroAction::Label() const {
  switch (verb) {
    case Verb::kPickUp:
      return "pick up " + std::string(LabelItem(item)) + " from " + StationName(target) + ".";
    case Verb::kPlaceIn: return "place onion in " + StationName(target) + ".";
    case Verb::kPlaceOn:
      return "place " + std::string(LabelItem(item)) + " on " + StationName(target) + ".";
    case Verb::kDeliver: return "deliver soup in " + StationName(target) + ".";
    case Verb::kWait: return "wait.";
    case Verb::kMoveAway: return "move away.";
  }
  return "wait.";
}

std::optional<MacroAction> ParseMacroLabel(std::string_view label) {
  std::string s(label);
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "wait") return MacroAction::Wait();
  if (s == "move away") return MacroAction::MoveAway();
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  if (w.size() == 5 && w[0] == "pick" && w[1] == "up" && w[3] == "from") {
    auto item = ParseLabelItem(w[2]);
    auto st = ParseStationName(w[4]);
    if (item && st) return MacroAction{MacroAction::Verb::kPickUp, *item, *st};
  }
  if (w.size() == 4 && w[0] == "place" && (w[2] == "in" || w[2] == "on")) {
    auto item = ParseLabelItem(w[1]);
    auto st = ParseStationName(w[3]);
    if (item && st) {
      if (w[2] == "in" && *item == Item::kOnion && st->kind == Cell::kCooker) {
        return MacroAction{MacroAction::Verb::kPlaceIn, Item::kOnion, *st};
      }
      if (w[2] == "on") return MacroAction{MacroAction::Verb::kPlaceOn, *item, *st};
    }
  }
  if (w.size() == 4 && w[0] == "deliver" && w[1] == "soup" && w[2] == "in") {
    auto st = ParseStationName(w[3]);
    if (st && st->kind == Cell::kDelivery) return MacroAction{MacroAction::Verb::kDeliver, Item::kSoup, *st};
  }
  return std::nullopt;
}

Reach StationReach(const KitchenState& state, int player, const StationRef& ref) {
  const KitchenLayout& layout = *state.layout;
  const Pos target = layout.station_pos(ref);
  const Pos start = state.agents[player].pos;
  const Pos partner = state.agents[1 - player].pos;
  Reach r;
  r.distance = DistanceToTarget(layout, Bfs(layout, start, partner), target);
  r.free_distance = DistanceToTarget(layout, Bfs(layout, start, std::nullopt), target);
  if (r.free_distance == kUnreachable) {
    r.status = Reach::Status::kInaccessible;
  } else if (r.distance == kUnreachable) {
    r.status = Reach::Status::kBlocked;
  } else if (r.distance > r.free_distance) {
    r.status = Reach::Status::kDetour;
  } else {
    r.status = Reach::Status::kReachable;
  }
  return r;
}

std::optional<std::pair<StationRef, int>> ClosestEmptyCounter(const KitchenState& state, int player) {
  std::optional<std::pair<StationRef, int>> best;
  const int n = static_cast<int>(state.counter_items.size());
  if (n == 0) return best;
  const KitchenLayout& layout = *state.layout;
  const BfsResult bfs = Bfs(layout, state.agents[player].pos, state.agents[1 - player].pos);
  for (int i = 0; i < n; ++i) {
    if (state.counter_items[i] != Item::kNone) continue;
    StationRef ref{Cell::kCounter, i};
    int d = DistanceToTarget(layout, bfs, layout.station_pos(ref));
    if (d == kUnreachable) continue;
    if (!best || d < best->second) best = std::make_pair(ref, d);
  }
  return best;
}

std::vector<MacroOption> MacroActions(const KitchenState& state, int player) {
  const KitchenLayout& layout = *state.layout;
  const Item held = state.agents[player].held;
  std::vector<MacroOption> out;
  auto add = [&](MacroAction m) {
    MacroOption opt;
    opt.macro = m;
    if (m.verb != MacroAction::Verb::kWait && m.verb != MacroAction::Verb::kMoveAway) {
      opt.reach = StationReach(state, player, m.target);
    }
    opt.feasible = Feasible(state, player, m, opt.reach);
    out.push_back(opt);
  };
  auto count = [&](Cell kind) { return static_cast<int>(layout.stations(kind).size()); };
  using V = MacroAction::Verb;

  for (int i = 0; i < count(Cell::kOnionDispenser); ++i) {
    add({V::kPickUp, Item::kOnion, {Cell::kOnionDispenser, i}});
  }
  for (int i = 0; i < count(Cell::kPlateDispenser); ++i) {
    add({V::kPickUp, Item::kPlate, {Cell::kPlateDispenser, i}});
  }
  for (int i = 0; i < count(Cell::kCooker); ++i) add({V::kPickUp, Item::kSoup, {Cell::kCooker, i}});
  for (int i = 0; i < count(Cell::kCooker); ++i) add({V::kPlaceIn, Item::kOnion, {Cell::kCooker, i}});
  for (int i = 0; i < count(Cell::kDelivery); ++i) add({V::kDeliver, Item::kSoup, {Cell::kDelivery, i}});
  for (Item item : {Item::kOnion, Item::kPlate, Item::kSoup}) {
    for (int i = 0; i < count(Cell::kSharedCounter); ++i) {
      add({V::kPickUp, item, {Cell::kSharedCounter, i}});
    }
  }
  for (int i = 0; i < count(Cell::kCounter); ++i) {
    const Item on = state.counter_items[i];
    if (on != Item::kNone) add({V::kPickUp, on, {Cell::kCounter, i}});
  }
  if (held != Item::kNone) {
    for (int i = 0; i < count(Cell::kSharedCounter); ++i) {
      add({V::kPlaceOn, held, {Cell::kSharedCounter, i}});
    }
    if (auto k = ClosestEmptyCounter(state, player)) add({V::kPlaceOn, held, k->first});
  }
  add(MacroAction::Wait());
  add(MacroAction::MoveAway());
  return out;
}

std::vector<ActionId> LegalActions(const KitchenState& state, int player) {
  std::vector<ActionId> out;
  for (const auto& opt : MacroActions(state, player)) {
    if (!opt.feasible) continue;
    out.push_back(ActionId{GameKind::kKitchen, static_cast<int>(out.size()), opt.macro.Label()});
  }
  return out;
}

std::optional<std::vector<Dir>> PathToStation(const KitchenState& state, int player, Pos target,
                                              bool partner_blocks) {
  const KitchenLayout& layout = *state.layout;
  const Pos start = state.agents[player].pos;
  std::optional<Pos> obstacle;
  if (partner_blocks) obstacle = state.agents[1 - player].pos;
  auto is_goal = [&](Pos p) { return DirBetween(p, target).has_value(); };
  // BFS again here (rather than reusing Bfs) so the first goal popped in
  // up/down/left/right expansion order wins ties deterministically.
  const int w = layout.width();
  std::vector<int> parent(w * layout.height(), -2);
  std::vector<Dir> via(w * layout.height(), Dir::kUp);
  std::deque<Pos> queue{start};
  parent[start.row * w + start.col] = -1;
  while (!queue.empty()) {
    Pos p = queue.front();
    queue.pop_front();
    if (is_goal(p)) {
      std::vector<Dir> path;
      for (int i = p.row * w + p.col; parent[i] >= 0; i = parent[i]) path.push_back(via[i]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Dir d : kDirs) {
      Pos q = Step(p, d);
      if (!layout.Walkable(q) || (obstacle && q == *obstacle)) continue;
      const int qi = q.row * w + q.col;
      if (parent[qi] != -2) continue;
      parent[qi] = p.row * w + p.col;
      via[qi] = d;
      queue.push_back(q);
    }
  }
  return std::nullopt;
}

std::vector<Primitive> Ground(const KitchenState& state, int player, const MacroAction& macro) {
  const KitchenLayout& layout = *state.layout;
  const AgentState& me = state.agents[player];
  if (macro.verb == MacroAction::Verb::kWait) return {Primitive::kStay};
  if (macro.verb == MacroAction::Verb::kMoveAway) {
    const Pos partner = state.agents[1 - player].pos;
    const BfsResult from_partner = Bfs(layout, partner, std::nullopt);
    auto dist = [&](Pos p) { return from_partner.dist[p.row * layout.width() + p.col]; };
    const int here = dist(me.pos);
    if (here == kUnreachable) return {Primitive::kStay};
    for (Dir d : kDirs) {
      Pos q = Step(me.pos, d);
      if (!layout.Walkable(q) || q == partner) continue;
      if (dist(q) > here) return {ToPrimitive(d)};
    }
    return {Primitive::kStay};
  }
  const Pos target = layout.station_pos(macro.target);
  auto path = PathToStation(state, player, target);
  if (!path) throw NoPath("no path to " + StationName(macro.target));
  Pos end = me.pos;
  for (Dir d : *path) end = Step(end, d);
  const Dir needed = *DirBetween(end, target);
  const Dir facing = path->empty() ? me.facing : path->back();
  std::vector<Primitive> out;
  for (Dir d : *path) out.push_back(ToPrimitive(d));
  if (facing != needed) out.push_back(ToPrimitive(needed));
  out.push_back(Primitive::kInteract);
  return out;
}

KitchenState Tick(const KitchenState& state, std::array<Primitive, 2> moves) {
  KitchenState s = state;
  const KitchenLayout& layout = *s.layout;
  for (Cooker& c : s.cookers) {
    if (c.status == Cooker::Status::kCooking && --c.remaining <= 0) {
      c.remaining = 0;
      c.status = Cooker::Status::kCooked;
    }
  }
  std::array<Pos, 2> old{s.agents[0].pos, s.agents[1].pos};
  std::array<Pos, 2> wanted = old;
  for (int p = 0; p < 2; ++p) {
    if (auto d = ToDir(moves[p])) {
      s.agents[p].facing = *d;
      Pos q = Step(old[p], *d);
      if (layout.Walkable(q)) wanted[p] = q;
    }
  }
  const bool same_cell = wanted[0] == wanted[1];
  const bool swap = wanted[0] == old[1] && wanted[1] == old[0];
  if (same_cell || swap) {
    wanted = old;
  } else {
    for (int p = 0; p < 2; ++p) {
      // Moving into a cell whose occupant stays put fails.
      if (wanted[p] == old[1 - p] && wanted[1 - p] == old[1 - p]) wanted[p] = old[p];
    }
  }
  s.agents[0].pos = wanted[0];
  s.agents[1].pos = wanted[1];
  for (int p = 0; p < 2; ++p) {
    if (moves[p] == Primitive::kInteract) Interact(layout, s, p);
  }
  ++s.tick;
  return s;
}

}  // namespace coord_arena::kitchen
