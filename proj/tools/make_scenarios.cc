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

// Regenerates the bundled QA scenario pack from scripted self-play.
// Gold answers come from the scripted policies (JP, partner intent) and from
// direct state inspection (EC). Usage: make_scenarios > data/scenarios/pack.jsonl

#include <iostream>
#include <string>
#include <vector>

#include "coord_arena/envs.h"
#include "coord_arena/qa.h"
#include "coord_arena/scripted.h"
#include "json.hpp"

namespace ca = coord_arena;
using nlohmann::json;

namespace {

json Gold(const std::string& gold) {
  json q = json::object();
  q["gold"] = gold;
  return q;
}

void Emit(const std::string& id, ca::GameKind game, const json& state, int player, const json& questions) {
  json rec = {{"id", id},
              {"game", std::string(ca::GameKindName(game))},
              {"state", state},
              {"player", player},
              {"questions", questions}};
  ca::qa::RenderAll({ca::qa::RecordFromJson(rec)});  // validates gold answers
  std::cout << rec.dump() << "\n";
}

std::string Policy(ca::GameKind game) {
  switch (game) {
    case ca::GameKind::kHanabi: return "rule-hanabi";
    case ca::GameKind::kKitchen: return "greedy-kitchen";
    default: return "greedy-pursuit";
  }
}

ca::ActionId Pick(const ca::GameEnv& env, int player) {
  const auto legal = env.LegalActions(player);
  return ca::ScriptedPolicy(Policy(env.kind()), env, player, legal);
}

void StepAll(ca::GameEnv& env) {
  std::vector<std::pair<int, ca::ActionId>> d;
  for (int p : env.PlayersToAct()) d.emplace_back(p, Pick(env, p));
  env.Step(d);
}

void Hanabi(std::uint64_t seed, int reveals_wanted, int infers_wanted) {
  ca::EnvConfig ec;
  ec.seed = ca::Seed{seed};
  auto env = ca::MakeEnv(ec);
  auto* h = dynamic_cast<ca::HanabiEnv*>(env.get());
  int reveals = 0, infers = 0;
  while (!env->IsTerminal() && (reveals < reveals_wanted || infers < infers_wanted)) {
    const auto& s = h->state();
    const int p = s.current_player;
    const auto jp = Pick(*env, p);
    // EC: next playable card of the lowest unfinished stack.
    int color = 0;
    while (color < ca::hanabi::kNumColors - 1 && s.stacks[color] == 5) ++color;
    const std::string cname(ca::hanabi::ColorName(static_cast<ca::hanabi::Color>(color)));
    json ec_options = json::array();
    for (int r = 1; r <= 5; ++r) ec_options.push_back(cname + " " + std::to_string(r));
    ec_options.push_back(cname + " Stack is Full");
    const std::string ec_gold =
        s.stacks[color] == 5 ? cname + " Stack is Full" : cname + " " + std::to_string(s.stacks[color] + 1);
    json questions = {
        {"EC", {{"question", "Which " + cname + " card can be played next?"}, {"options", ec_options}, {"gold", ec_gold}}},
        {"JP", Gold(jp.label)}};
    const std::string id = "hanabi-s" + std::to_string(seed) + "-t" + std::to_string(s.turn);
    if (s.turn >= 2 && jp.label.rfind("Reveal", 0) == 0 && reveals < reveals_wanted) {
      questions["ToM"] = {{"tom_kind", "hanabi-reveal"}, {"gold", jp.label}};
      Emit(id, ca::GameKind::kHanabi, ca::HanabiStateToJson(s), p, questions);
      ++reveals;
    } else if (!s.history.empty() && s.history.back().move.type != ca::hanabi::Move::Type::kPlay &&
               s.history.back().move.type != ca::hanabi::Move::Type::kDiscard && jp.label.rfind("Play", 0) == 0 &&
               infers < infers_wanted) {
      const std::string index = jp.label.substr(jp.label.find_last_of(' ') + 1);
      questions["ToM"] = {{"tom_kind", "hanabi-infer"}, {"gold", "I should Play Card " + index}};
      Emit(id, ca::GameKind::kHanabi, ca::HanabiStateToJson(s), p, questions);
      ++infers;
    }
    StepAll(*env);
  }
}

void Kitchen(const std::string& layout, const std::vector<int>& ticks, int player) {
  ca::EnvConfig ec;
  ec.game = ca::GameKind::kKitchen;
  ec.layout = layout;
  auto env = ca::MakeEnv(ec);
  auto* k = dynamic_cast<ca::KitchenEnv*>(env.get());
  for (int tick : ticks) {
    while (k->state().tick < tick) StepAll(*env);
    const json state = ca::KitchenStateToJson(k->state());
    auto fresh = ca::EnvFromSnapshot(ca::GameKind::kKitchen, state, ca::DefaultNames());
    const auto& cooker = k->state().cookers.at(0);
    const int needed = cooker.status == ca::kitchen::Cooker::Status::kOff ? 3 - cooker.onions : 0;
    json questions = {
        {"EC",
         {{"question", "How many onions are still needed to fill up c0?"},
          {"options", {"0.", "1.", "2.", "3."}},
          {"gold", std::to_string(needed) + "."}}},
        {"ToM", Gold(Pick(*fresh, 1 - player).label)},
        {"JP", Gold(Pick(*fresh, player).label)}};
    Emit("kitchen-" + layout + "-t" + std::to_string(tick), ca::GameKind::kKitchen, state, player, questions);
  }
}

void Pursuit(ca::GameKind game, const std::string& map, const std::vector<int>& turns, int player) {
  ca::EnvConfig ec;
  ec.game = game;
  ec.layout = map;
  auto env = ca::MakeEnv(ec);
  auto* pe = dynamic_cast<ca::PursuitEnv*>(env.get());
  for (int turn : turns) {
    while (pe->state().turn < turn && !env->IsTerminal()) StepAll(*env);
    if (env->IsTerminal()) break;
    const auto& s = pe->state();
    json options = json::array();
    json ec;
    if (game == ca::GameKind::kCapture) {
      for (int r : s.graph->rooms) options.push_back("Room " + std::to_string(r));
      ec = {{"question", "Which room is the Thief in?"},
            {"options", options},
            {"gold", "Room " + std::to_string(s.adversary_room)}};
    } else {
      int unfixed = 0;
      for (std::size_t g = 0; g < s.graph->generators.size(); ++g) {
        if (s.generator_fixes_done[g] < s.graph->generators[g].fixes_required) ++unfixed;
      }
      for (std::size_t n = 0; n <= s.graph->generators.size(); ++n) options.push_back(std::to_string(n));
      ec = {{"question", "How many generators still need to be fixed?"},
            {"options", options},
            {"gold", std::to_string(unfixed)}};
    }
    json questions = {{"EC", ec}, {"ToM", Gold(Pick(*env, 1 - player).label)}, {"JP", Gold(Pick(*env, player).label)}};
    Emit(std::string(ca::GameKindName(game)) + "-" + map + "-t" + std::to_string(turn), game,
         ca::PursuitStateToJson(s), player, questions);
  }
}

}  // namespace

int main() {
  std::cout << "# Bundled coordination QA scenarios; regenerate with make_scenarios.\n";
  Hanabi(1, 2, 1);
  Hanabi(2, 1, 1);
  Kitchen("cramped_room", {0, 12, 40}, 0);
  Kitchen("coordination_ring", {25}, 1);
  Kitchen("asymmetric_advantages", {30}, 0);
  Pursuit(ca::GameKind::kCapture, "grid_3x3", {0}, 0);
  Pursuit(ca::GameKind::kCapture, "open_3x3", {0, 1}, 1);
  Pursuit(ca::GameKind::kEscape, "escape_3x3", {0, 1}, 0);
  return 0;
}
