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

#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "coord_arena/envs.h"
#include "coord_arena/errors.h"
#include "coord_arena/kitchen.h"
#include "coord_arena/rng.h"
#include "coord_arena/scripted.h"
#include "doctest.h"

using namespace coord_arena;
using namespace coord_arena::kitchen;

namespace {

std::shared_ptr<const KitchenLayout> Layout(const std::string& text, const std::string& name = "test") {
  return std::make_shared<const KitchenLayout>(ParseLayout(text, name));
}

constexpr int kInf = 1 << 30;

// Plain BFS over floor cells, optionally treating `blocked` as a wall.
std::vector<std::vector<int>> Bfs(const KitchenLayout& l, Pos from, const Pos* blocked) {
  std::vector<std::vector<int>> d(l.height(), std::vector<int>(l.width(), kInf));
  std::deque<Pos> q{from};
  d[from.row][from.col] = 0;
  while (!q.empty()) {
    Pos p = q.front();
    q.pop_front();
    const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      Pos n{p.row + dr[k], p.col + dc[k]};
      if (n.row < 0 || n.col < 0 || n.row >= l.height() || n.col >= l.width()) continue;
      if (l.rows()[n.row][n.col] != ' ' && !(l.rows()[n.row][n.col] >= '1' && l.rows()[n.row][n.col] <= '2')) continue;
      if (blocked && n == *blocked) continue;
      if (d[n.row][n.col] != kInf) continue;
      d[n.row][n.col] = d[p.row][p.col] + 1;
      q.push_back(n);
    }
  }
  return d;
}

int DistanceToStation(const KitchenLayout& l, const std::vector<std::vector<int>>& d, Pos station) {
  int best = kInf;
  const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
  for (int k = 0; k < 4; ++k) {
    Pos n{station.row + dr[k], station.col + dc[k]};
    if (n.row < 0 || n.col < 0 || n.row >= l.height() || n.col >= l.width()) continue;
    best = std::min(best, d[n.row][n.col]);
  }
  return best;
}

std::vector<Pos> FloorCells(const KitchenLayout& l) {
  std::vector<Pos> out;
  for (int r = 0; r < l.height(); ++r) {
    for (int c = 0; c < l.width(); ++c) {
      if (l.Walkable({r, c})) out.push_back({r, c});
    }
  }
  return out;
}

// Runs grounded primitives for `player` while the partner stays.
KitchenState Execute(KitchenState s, int player, const MacroAction& m, int* ticks) {
  const auto prims = Ground(s, player, m);
  for (auto p : prims) {
    std::array<Primitive, 2> moves{Primitive::kStay, Primitive::kStay};
    moves[player] = p;
    s = Tick(s, moves);
  }
  *ticks = static_cast<int>(prims.size());
  return s;
}

const char* kCorridor =
    "XXXXXX\n"
    "O1 2 C\n"
    "XXDXPX\n";

}  // namespace

TEST_SUITE("kitchen") {
  TEST_CASE("layout parsing numbers stations row-major") {
    auto l = Layout(
        "XXCXX\n"
        "O  2O\n"
        "X1  X\n"
        "XPXDX\n");
    CHECK(l->width() == 5);
    CHECK(l->height() == 4);
    CHECK(l->stations(Cell::kOnionDispenser).size() == 2);
    CHECK(l->stations(Cell::kPlateDispenser).size() == 1);
    CHECK(l->stations(Cell::kCooker).size() == 1);
    CHECK(l->stations(Cell::kDelivery).size() == 1);
    CHECK(l->station_pos({Cell::kOnionDispenser, 0}) == Pos{1, 0});
    CHECK(l->station_pos({Cell::kOnionDispenser, 1}) == Pos{1, 4});
    CHECK(l->spawn(0) == Pos{2, 1});
    CHECK(l->spawn(1) == Pos{1, 3});
    CHECK(StationName({Cell::kCooker, 0}) == "c0");
  }

  TEST_CASE("malformed layouts are rejected") {
    CHECK_THROWS_AS(ParseLayout("XXX\nO1\nX2X\n"), MalformedGrid);
    CHECK_THROWS_AS(ParseLayout("XXX\nO1Q\nX2X\n"), MalformedGrid);
    CHECK_THROWS_AS(ParseLayout("XXX\nO1X\nXXX\n"), MalformedGrid);
  }

  TEST_CASE("partitioned layouts flag per-player accessibility like a BFS oracle") {
    for (const char* name : {"forced_coordination", "split_corridor", "asymmetric_advantages", "cramped_room",
                             "coordination_ring", "counter_circuit"}) {
      auto l = LoadKitchenLayout(name);
      for (int p = 0; p < 2; ++p) {
        const auto d = Bfs(*l, l->spawn(p), nullptr);
        for (Cell kind : {Cell::kOnionDispenser, Cell::kPlateDispenser, Cell::kCooker, Cell::kDelivery,
                          Cell::kSharedCounter, Cell::kCounter}) {
          for (int i = 0; i < static_cast<int>(l->stations(kind).size()); ++i) {
            const bool reach = DistanceToStation(*l, d, l->stations(kind)[i]) < kInf;
            CHECK(l->Accessible(p, {kind, i}) == reach);
          }
        }
      }
    }
    auto forced = LoadKitchenLayout("forced_coordination");
    const bool onion_shared = forced->Accessible(0, {Cell::kOnionDispenser, 0}) && forced->Accessible(1, {Cell::kOnionDispenser, 0});
    const bool cooker_shared = forced->Accessible(0, {Cell::kCooker, 0}) && forced->Accessible(1, {Cell::kCooker, 0});
    CHECK_FALSE(onion_shared);
    CHECK_FALSE(cooker_shared);
  }

  TEST_CASE("reported distances equal an independent BFS on random states") {
    Pcg32 rng(2024);
    for (const char* name : {"cramped_room", "coordination_ring", "counter_circuit", "forced_coordination",
                             "asymmetric_advantages", "split_corridor"}) {
      auto l = LoadKitchenLayout(name);
      const auto floor = FloorCells(*l);
      for (int trial = 0; trial < 100; ++trial) {
        KitchenState s = InitialState(l);
        const auto a = floor[rng.Bounded(static_cast<std::uint32_t>(floor.size()))];
        auto b = a;
        while (b == a) b = floor[rng.Bounded(static_cast<std::uint32_t>(floor.size()))];
        s.agents[0].pos = a;
        s.agents[1].pos = b;
        for (int p = 0; p < 2; ++p) {
          const Pos partner = s.agents[1 - p].pos;
          const auto with = Bfs(*l, s.agents[p].pos, &partner);
          const auto without = Bfs(*l, s.agents[p].pos, nullptr);
          for (Cell kind : {Cell::kOnionDispenser, Cell::kPlateDispenser, Cell::kCooker, Cell::kDelivery,
                            Cell::kSharedCounter}) {
            for (int i = 0; i < static_cast<int>(l->stations(kind).size()); ++i) {
              const Pos st = l->stations(kind)[i];
              const int dw = DistanceToStation(*l, with, st);
              const int df = DistanceToStation(*l, without, st);
              const Reach r = StationReach(s, p, {kind, i});
              if (df == kInf) {
                REQUIRE(r.status == Reach::Status::kInaccessible);
              } else if (dw == kInf) {
                REQUIRE(r.status == Reach::Status::kBlocked);
                REQUIRE(r.free_distance == df);
              } else {
                REQUIRE(r.distance == dw);
                REQUIRE(r.free_distance == df);
                REQUIRE(r.status == (dw == df ? Reach::Status::kReachable : Reach::Status::kDetour));
              }
            }
          }
        }
      }
    }
  }

  TEST_CASE("adjacent onion dispenser is zero units away") {
    auto l = LoadKitchenLayout("cramped_room");
    KitchenState s = InitialState(l);
    s.agents[0].pos = {1, 1};
    s.agents[0].facing = Dir::kLeft;
    const Reach r = StationReach(s, 0, {Cell::kOnionDispenser, 0});
    CHECK(r.distance == 0);
    bool found = false;
    for (const auto& a : LegalActions(s, 0)) found |= a.label == "pick up onion from o0.";
    CHECK(found);
    int ticks = 0;
    const auto after = Execute(s, 0, *ParseMacroLabel("pick up onion from o0."), &ticks);
    CHECK(ticks == 1);
    CHECK(after.agents[0].held == Item::kOnion);
  }

  TEST_CASE("inventory rules filter macro actions") {
    auto l = LoadKitchenLayout("cramped_room");
    KitchenState s = InitialState(l);
    s.agents[0].held = Item::kOnion;
    for (const auto& o : MacroActions(s, 0)) {
      if (o.macro.verb == MacroAction::Verb::kPickUp) CHECK_FALSE(o.feasible);
    }
    s.agents[0].held = Item::kPlate;
    for (const auto& a : LegalActions(s, 0)) CHECK(a.label.find("place onion") == std::string::npos);
  }

  TEST_CASE("partner on the only corridor blocks the cooker") {
    auto l = Layout(kCorridor);
    KitchenState s = InitialState(l);
    s.agents[0].held = Item::kOnion;
    const Reach r = StationReach(s, 0, {Cell::kCooker, 0});
    CHECK(r.status == Reach::Status::kBlocked);
    for (const auto& a : LegalActions(s, 0)) CHECK(a.label != "place onion in c0.");
    s.agents[1].pos = {1, 2};
    s.agents[0].pos = {1, 1};
    s.agents[1].pos = {1, 4};
    CHECK(StationReach(s, 0, {Cell::kCooker, 0}).status == Reach::Status::kBlocked);
    KitchenEnv env(s, DefaultNames());
    CHECK(env.Observation(0).find("c0 is blocked by Bob.") != std::string::npos);
  }

  TEST_CASE("grounded paths follow BFS length then interact") {
    auto l = LoadKitchenLayout("coordination_ring");
    const auto floor = FloorCells(*l);
    for (const Pos start : floor) {
      KitchenState s = InitialState(l);
      s.agents[0].pos = start;
      s.agents[1].pos = start == l->spawn(1) ? l->spawn(0) : l->spawn(1);
      if (s.agents[1].pos == start) continue;
      const Pos partner = s.agents[1].pos;
      const auto d = Bfs(*l, start, &partner);
      const int expect = DistanceToStation(*l, d, l->stations(Cell::kOnionDispenser)[0]);
      if (expect == kInf) continue;
      int ticks = 0;
      const auto after = Execute(s, 0, *ParseMacroLabel("pick up onion from o0."), &ticks);
      CHECK(after.agents[0].held == Item::kOnion);
      CHECK(ticks >= expect + 1);
      CHECK(ticks <= expect + 2);  // at most one turn-in-place before interacting
    }
    KitchenState s = InitialState(l);
    CHECK(Ground(s, 0, MacroAction::Wait()) == std::vector<Primitive>{Primitive::kStay});
  }

  TEST_CASE("cooking lasts exactly 20 ticks and delivery scores 20") {
    auto l = LoadKitchenLayout("cramped_room");
    KitchenState s = InitialState(l);
    s.cookers[0].onions = 2;
    s.agents[0].pos = {1, 2};
    s.agents[0].facing = Dir::kUp;
    s.agents[0].held = Item::kOnion;
    s = Tick(s, {Primitive::kInteract, Primitive::kStay});
    CHECK(s.cookers[0].onions == 3);
    CHECK(s.cookers[0].status == Cooker::Status::kCooking);
    CHECK(s.cookers[0].remaining == kCookTicks);
    CHECK(kCookTicks == 20);
    int waited = 0;
    while (s.cookers[0].status == Cooker::Status::kCooking) {
      s = Tick(s, {Primitive::kStay, Primitive::kStay});
      ++waited;
    }
    CHECK(waited == 20);
    CHECK(s.cookers[0].status == Cooker::Status::kCooked);

    s.agents[0].held = Item::kSoup;
    s.agents[0].pos = {2, 3};
    s.agents[0].facing = Dir::kDown;
    s.agents[1].pos = {1, 1};
    const int before = s.score;
    s = Tick(s, {Primitive::kInteract, Primitive::kStay});
    CHECK(s.score == before + 20);
    CHECK(s.agents[0].held == Item::kNone);
  }

  TEST_CASE("soup pickup needs a plate and a cooked soup") {
    auto l = LoadKitchenLayout("cramped_room");
    KitchenState s = InitialState(l);
    s.agents[0].pos = {1, 2};
    s.agents[0].facing = Dir::kUp;
    s.cookers[0] = {3, Cooker::Status::kCooking, 5};
    s.agents[0].held = Item::kPlate;
    auto t = Tick(s, {Primitive::kInteract, Primitive::kStay});
    CHECK(t.agents[0].held == Item::kPlate);
    s.cookers[0] = {3, Cooker::Status::kCooked, 0};
    t = Tick(s, {Primitive::kInteract, Primitive::kStay});
    CHECK(t.agents[0].held == Item::kSoup);
    CHECK(t.cookers[0].onions == 0);
    s.agents[0].held = Item::kNone;
    t = Tick(s, {Primitive::kInteract, Primitive::kStay});
    CHECK(t.agents[0].held == Item::kNone);
  }

  TEST_CASE("collisions leave both agents in place") {
    auto l = Layout(
        "XXXXX\n"
        "O1 2C\n"
        "XXPDX\n");
    KitchenState s = InitialState(l);
    auto t = Tick(s, {Primitive::kRight, Primitive::kLeft});  // both into (1,2)
    CHECK(t.agents[0].pos == s.agents[0].pos);
    CHECK(t.agents[1].pos == s.agents[1].pos);
    s.agents[1].pos = {1, 2};
    t = Tick(s, {Primitive::kRight, Primitive::kLeft});  // swap
    CHECK(t.agents[0].pos == Pos{1, 1});
    CHECK(t.agents[1].pos == Pos{1, 2});
  }

  TEST_CASE("random macro play keeps score a non-decreasing multiple of 20") {
    for (const char* name : {"cramped_room", "coordination_ring", "forced_coordination"}) {
      EnvConfig ec;
      ec.game = GameKind::kKitchen;
      ec.layout = name;
      ec.horizon = 300;
      auto env = MakeEnv(ec);
      Pcg32 rng(7);
      int last = 0;
      while (!env->IsTerminal()) {
        std::vector<std::pair<int, ActionId>> d;
        for (int p : env->PlayersToAct()) {
          const auto legal = env->LegalActions(p);
          d.emplace_back(p, legal[rng.Bounded(static_cast<std::uint32_t>(legal.size()))]);
        }
        env->Step(d);
        const int score = env->Score();
        REQUIRE(score % 20 == 0);
        REQUIRE(score >= last);
        last = score;
        const auto& st = dynamic_cast<const KitchenEnv&>(*env).state();
        for (const auto& c : st.cookers) {
          REQUIRE(c.onions <= 3);
          if (c.status != Cooker::Status::kOff) REQUIRE(c.onions == 3);
        }
        REQUIRE_FALSE(st.agents[0].pos == st.agents[1].pos);
      }
    }
  }

  TEST_CASE("greedy self-play on the cramped room delivers soups") {
    EnvConfig ec;
    ec.game = GameKind::kKitchen;
    ec.layout = "cramped_room";
    auto env = MakeEnv(ec);
    ScriptedAgent a("greedy-kitchen"), b("greedy-kitchen");
    Agent* agents[] = {&a, &b};
    const auto r = RunEpisode(*env, agents, kDefaultKitchenHorizon, Seed{0});
    CHECK(r.score >= 60);
    CHECK(r.score % 20 == 0);
    CHECK(r.steps == kDefaultKitchenHorizon);
  }
}
