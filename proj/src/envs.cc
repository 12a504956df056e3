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

#include "coord_arena/envs.h"

#include <algorithm>
#include <filesystem>

#include "coord_arena/errors.h"
#include "coord_arena/resources.h"

namespace coord_arena {
namespace {

using nlohmann::json;

std::string LoadNamed(const std::string& name_or_path, const std::string& dir, const std::string& ext) {
  if (std::filesystem::is_regular_file(name_or_path)) return ReadFile(name_or_path);
  const std::string res = dir + "/" + name_or_path + ext;
  if (!HasResource(res)) throw ConfigError("unknown " + dir.substr(0, dir.size() - 1) + ": " + name_or_path);
  return LoadResource(res);
}

json CardJson(const hanabi::Card& c) { return json::array({std::string(hanabi::ColorName(c.color)), c.rank}); }

hanabi::Card CardFromJson(const json& j) {
  auto color = hanabi::ParseColor(j.at(0).get<std::string>());
  const int rank = j.at(1).get<int>();
  if (!color || rank < 1 || rank > hanabi::kNumRanks) throw ConfigError("bad card " + j.dump());
  return {*color, rank};
}

json MoveJson(const hanabi::Move& m) {
  static const char* kNames[] = {"play", "discard", "reveal_color", "reveal_rank"};
  return {{"type", kNames[static_cast<int>(m.type)]}, {"value", m.value}};
}

hanabi::Move MoveFromJson(const json& j) {
  const std::string t = j.at("type");
  const int v = j.at("value");
  if (t == "play") return hanabi::Move::Play(v);
  if (t == "discard") return hanabi::Move::Discard(v);
  if (t == "reveal_color") return {hanabi::Move::Type::kRevealColor, v};
  if (t == "reveal_rank") return hanabi::Move::RevealRank(v);
  throw ConfigError("bad move type " + t);
}

json ItemJson(kitchen::Item item) {
  switch (item) {
    case kitchen::Item::kNone: return nullptr;
    case kitchen::Item::kOnion: return "onion";
    case kitchen::Item::kPlate: return "plate";
    case kitchen::Item::kSoup: return "soup";
  }
  return nullptr;
}

kitchen::Item ItemFromJson(const json& j) {
  if (j.is_null()) return kitchen::Item::kNone;
  const std::string s = j;
  if (s == "onion") return kitchen::Item::kOnion;
  if (s == "plate") return kitchen::Item::kPlate;
  if (s == "soup") return kitchen::Item::kSoup;
  if (s == "nothing") return kitchen::Item::kNone;
  throw ConfigError("bad item " + s);
}

const char* DirName(kitchen::Dir d) {
  switch (d) {
    case kitchen::Dir::kUp: return "up";
    case kitchen::Dir::kDown: return "down";
    case kitchen::Dir::kLeft: return "left";
    case kitchen::Dir::kRight: return "right";
  }
  return "up";
}

kitchen::Dir DirFromJson(const std::string& s) {
  if (s == "up") return kitchen::Dir::kUp;
  if (s == "down") return kitchen::Dir::kDown;
  if (s == "left") return kitchen::Dir::kLeft;
  if (s == "right") return kitchen::Dir::kRight;
  throw ConfigError("bad direction " + s);
}

const char* CookerStatusName(kitchen::Cooker::Status s) {
  switch (s) {
    case kitchen::Cooker::Status::kOff: return "off";
    case kitchen::Cooker::Status::kCooking: return "cooking";
    case kitchen::Cooker::Status::kCooked: return "cooked";
  }
  return "off";
}

kitchen::Cooker::Status CookerStatusFromJson(const std::string& s) {
  if (s == "off") return kitchen::Cooker::Status::kOff;
  if (s == "cooking") return kitchen::Cooker::Status::kCooking;
  if (s == "cooked") return kitchen::Cooker::Status::kCooked;
  throw ConfigError("bad cooker status " + s);
}

json KnowledgeJson(const hanabi::CardKnowledge& k) {
  json colors = json::array(), ranks = json::array();
  for (int c = 0; c < hanabi::kNumColors; ++c) {
    if (k.ColorPlausible(static_cast<hanabi::Color>(c))) {
      colors.push_back(std::string(hanabi::ColorName(static_cast<hanabi::Color>(c))));
    }
  }
  for (int r = 1; r <= hanabi::kNumRanks; ++r) {
    if (k.RankPlausible(r)) ranks.push_back(r);
  }
  return {{"colors", colors}, {"ranks", ranks}, {"touched", k.touched}};
}

hanabi::CardKnowledge KnowledgeFromJson(const json& j) {
  hanabi::CardKnowledge k{0, 0, j.value("touched", false)};
  for (const auto& c : j.at("colors")) {
    auto color = hanabi::ParseColor(c.get<std::string>());
    if (!color) throw ConfigError("bad color in knowledge");
    k.colors |= static_cast<std::uint8_t>(1u << static_cast<int>(*color));
  }
  for (const auto& r : j.at("ranks")) k.ranks |= static_cast<std::uint8_t>(1u << (r.get<int>() - 1));
  if (k.colors == 0 || k.ranks == 0) throw ConfigError("knowledge sets must be nonempty");
  return k;
}

}  // namespace

std::string DefaultLayout(GameKind game) {
  switch (game) {
    case GameKind::kKitchen: return "cramped_room";
    case GameKind::kCapture: return "grid_3x3";
    case GameKind::kEscape: return "escape_3x3";
    case GameKind::kHanabi: return "";
  }
  return "";
}

std::shared_ptr<const kitchen::KitchenLayout> LoadKitchenLayout(const std::string& name_or_path) {
  return std::make_shared<const kitchen::KitchenLayout>(
      kitchen::ParseLayout(LoadNamed(name_or_path, "layouts", ".layout"), name_or_path));
}

std::shared_ptr<const pursuit::RoomGraph> LoadRoomGraph(const std::string& name_or_path) {
  auto g = pursuit::ParseMap(LoadNamed(name_or_path, "maps", ".map"));
  g.name = name_or_path;
  return std::make_shared<const pursuit::RoomGraph>(std::move(g));
}

// ---------------------------------------------------------------- Hanabi

HanabiEnv::HanabiEnv(hanabi::HanabiState state, PlayerNames names, hanabi::RuleOptions rules)
    : state_(std::move(state)), names_(std::move(names)), rules_(rules) {}

std::vector<int> HanabiEnv::PlayersToAct() const {
  if (IsTerminal()) return {};
  return {state_.current_player};
}

std::vector<ActionId> HanabiEnv::LegalActions(int player) const {
  if (IsTerminal() || player != state_.current_player) return {};
  return hanabi::LegalActions(state_, names_, rules_);
}

std::string HanabiEnv::Observation(int player) const {
  return text::HanabiObservation(state_, player, names_) + "\n\n" +
         text::ActionBlock(GameKind::kHanabi, LegalActions(player));
}

std::string HanabiEnv::GameDescription(int player) const {
  return text::GameDescription(GameKind::kHanabi, names_, player);
}

ActionId HanabiEnv::SafestAction(int player, std::span<const ActionId> legal) const {
  const auto& know = state_.knowledge[player];
  for (std::size_t i = 0; i < know.size(); ++i) {
    if (know[i].touched) continue;
    if (auto a = FindAction(legal, hanabi::MoveLabel(hanabi::Move::Discard(static_cast<int>(i)), ""))) return *a;
  }
  for (const auto& a : legal) {
    if (a.label.rfind("Discard", 0) == 0) return a;
  }
  for (const auto& a : legal) {
    if (a.label.rfind("Reveal", 0) == 0) return a;
  }
  return legal.front();
}

std::vector<StepEvent> HanabiEnv::Step(std::span<const std::pair<int, ActionId>> decisions) {
  std::vector<StepEvent> events;
  if (IsTerminal()) throw TerminalState("Hanabi game is over");
  const int me = state_.current_player;
  auto it = std::find_if(decisions.begin(), decisions.end(), [me](const auto& d) { return d.first == me; });
  if (it == decisions.end()) throw IllegalAction("current player supplied no action");
  const auto out = hanabi::ApplyAction(state_, it->second, names_, rules_);
  std::string text = names_[me] + ": " + it->second.label;
  if (out.card) {
    text += " (" + hanabi::CardName(*out.card) +
            (out.play_success ? ", success" : out.life_lost ? ", failed" : ", discarded") + ")";
  }
  events.push_back({"action", me, text});
  if (out.drawn) events.push_back({"draw", me, names_[me] + " draws a card"});
  if (IsTerminal()) {
    events.push_back({"terminal", -1, "Game over. Score: " + std::to_string(Score())});
  } else {
    events.push_back({"turn", state_.current_player, "It is " + names_[state_.current_player] + "'s turn"});
  }
  return events;
}

// ---------------------------------------------------------------- Kitchen

KitchenEnv::KitchenEnv(kitchen::KitchenState state, PlayerNames names, int horizon,
                       text::KitchenTextOptions text_opts)
    : state_(std::move(state)), names_(std::move(names)), horizon_(horizon), text_opts_(text_opts) {}

std::vector<int> KitchenEnv::PlayersToAct() const {
  if (IsTerminal()) return {};
  std::vector<int> out;
  for (int p = 0; p < 2; ++p) {
    if (!macros_[p]) out.push_back(p);
  }
  return out;
}

std::vector<ActionId> KitchenEnv::LegalActions(int player) const {
  if (IsTerminal()) return {};
  return kitchen::LegalActions(state_, player);
}

std::string KitchenEnv::Observation(int player) const {
  return text::KitchenObservation(state_, player, names_, text_opts_) + "\n\n" +
         text::ActionBlock(GameKind::kKitchen, LegalActions(player));
}

std::string KitchenEnv::GameDescription(int player) const {
  return text::GameDescription(GameKind::kKitchen, names_, player, state_.layout->name());
}

ActionId KitchenEnv::SafestAction(int, std::span<const ActionId> legal) const {
  if (auto a = FindAction(legal, "wait.")) return *a;
  return legal.front();
}

std::vector<StepEvent> KitchenEnv::Step(std::span<const std::pair<int, ActionId>> decisions) {
  std::vector<StepEvent> events;
  if (IsTerminal()) throw TerminalState("kitchen horizon reached");
  for (const auto& [player, action] : decisions) {
    auto legal = LegalActions(player);
    if (!FindAction(legal, action.label)) throw IllegalAction("not a legal kitchen action: " + action.label);
    macros_[player] = kitchen::ParseMacroLabel(action.label);
    events.push_back({"action", player, names_[player] + ": " + action.label});
  }
  std::array<kitchen::Primitive, 2> prims{kitchen::Primitive::kStay, kitchen::Primitive::kStay};
  std::array<bool, 2> finishes{false, false};
  for (int p = 0; p < 2; ++p) {
    if (!macros_[p]) continue;
    try {
      auto plan = kitchen::Ground(state_, p, *macros_[p]);
      prims[p] = plan.front();
      finishes[p] = plan.size() == 1;
    } catch (const NoPath&) {
      finishes[p] = true;  // target cut off since the choice; re-decide next tick
      events.push_back({"abandon", p, names_[p] + " cannot reach the target of " + macros_[p]->Label()});
    }
  }
  // Conflicting moves would leave both players stuck on the same plan
  // forever; seat 1 yields for this tick.
  const auto& a0 = state_.agents[0];
  const auto& a1 = state_.agents[1];
  auto target = [](const kitchen::AgentState& a, kitchen::Primitive p) {
    switch (p) {
      case kitchen::Primitive::kUp: return kitchen::Step(a.pos, kitchen::Dir::kUp);
      case kitchen::Primitive::kDown: return kitchen::Step(a.pos, kitchen::Dir::kDown);
      case kitchen::Primitive::kLeft: return kitchen::Step(a.pos, kitchen::Dir::kLeft);
      case kitchen::Primitive::kRight: return kitchen::Step(a.pos, kitchen::Dir::kRight);
      default: return a.pos;
    }
  };
  const auto t0 = target(a0, prims[0]);
  const auto t1 = target(a1, prims[1]);
  const bool moving = t0 != a0.pos && t1 != a1.pos;
  if (moving && (t0 == t1 || (t0 == a1.pos && t1 == a0.pos))) {
    prims[1] = kitchen::Primitive::kStay;
    finishes[1] = false;
  }
  const int before = state_.score;
  state_ = kitchen::Tick(state_, prims);
  for (int p = 0; p < 2; ++p) {
    if (finishes[p]) macros_[p].reset();
  }
  if (state_.score > before) {
    events.push_back({"delivery", -1, "Soup delivered. Score: " + std::to_string(state_.score)});
  }
  events.push_back({"tick", -1, "Tick " + std::to_string(state_.tick)});
  if (IsTerminal()) events.push_back({"terminal", -1, "Time is up. Score: " + std::to_string(Score())});
  return events;
}

// ---------------------------------------------------------------- Pursuit

PursuitEnv::PursuitEnv(pursuit::PursuitState state, PlayerNames names)
    : state_(std::move(state)), names_(std::move(names)) {}

GameKind PursuitEnv::kind() const {
  return state_.mode == pursuit::Mode::kCapture ? GameKind::kCapture : GameKind::kEscape;
}

std::vector<int> PursuitEnv::PlayersToAct() const {
  std::vector<int> out;
  if (IsTerminal()) return out;
  for (int p = 0; p < 2; ++p) {
    if (!state_.downed[p] && !state_.escaped[p]) out.push_back(p);
  }
  return out;
}

std::vector<ActionId> PursuitEnv::LegalActions(int player) const { return pursuit::LegalActions(state_, player); }

std::string PursuitEnv::Observation(int player) const {
  return text::PursuitObservation(state_, player, names_) + "\n\n" + text::ActionBlock(kind(), LegalActions(player));
}

std::string PursuitEnv::GameDescription(int player) const { return text::GameDescription(kind(), names_, player); }

ActionId PursuitEnv::SafestAction(int, std::span<const ActionId> legal) const {
  if (auto a = FindAction(legal, "Stay in current Room")) return *a;
  return legal.front();
}

std::vector<StepEvent> PursuitEnv::Step(std::span<const std::pair<int, ActionId>> decisions) {
  std::vector<StepEvent> events;
  std::array<std::optional<pursuit::PursuitAction>, 2> actions;
  for (const auto& [player, action] : decisions) {
    auto parsed = pursuit::ParseActionLabel(action.label);
    if (!parsed) throw IllegalAction("not a pursuit action: " + action.label);
    actions[player] = *parsed;
    events.push_back({"action", player, names_[player] + ": " + action.label});
  }
  for (int p : PlayersToAct()) {
    if (!actions[p]) throw IllegalAction(names_[p] + " supplied no action");
  }
  const auto before = state_;
  state_ = pursuit::StepState(state_, actions);
  const std::string adversary = state_.mode == pursuit::Mode::kCapture ? "Thief" : "Killer";
  if (state_.adversary_room != before.adversary_room) {
    events.push_back({"adversary", -1, adversary + " moves to Room " + std::to_string(state_.adversary_room)});
  }
  for (int p = 0; p < 2; ++p) {
    if (state_.downed[p] && !before.downed[p]) events.push_back({"downed", p, names_[p] + " is caught"});
  }
  if (IsTerminal()) {
    std::string how = state_.captured ? "Thief captured" : state_.won ? "Escaped" : "Lost";
    events.push_back({"terminal", -1, how + " after " + std::to_string(state_.turn) + " turns"});
  }
  return events;
}

// ---------------------------------------------------------------- Factory

std::unique_ptr<GameEnv> MakeEnv(const EnvConfig& config) {
  const std::string layout = config.layout.empty() ? DefaultLayout(config.game) : config.layout;
  switch (config.game) {
    case GameKind::kHanabi:
      return std::make_unique<HanabiEnv>(hanabi::Deal(config.seed), config.names, config.hanabi_rules);
    case GameKind::kKitchen:
      return std::make_unique<KitchenEnv>(kitchen::InitialState(LoadKitchenLayout(layout)), config.names,
                                          config.horizon, text::KitchenTextOptions{config.include_partner_info});
    case GameKind::kCapture:
      return std::make_unique<PursuitEnv>(pursuit::InitialState(LoadRoomGraph(layout), pursuit::Mode::kCapture),
                                          config.names);
    case GameKind::kEscape:
      return std::make_unique<PursuitEnv>(pursuit::InitialState(LoadRoomGraph(layout), pursuit::Mode::kEscape),
                                          config.names);
  }
  throw ConfigError("unknown game");
}

// ---------------------------------------------------------------- Snapshots

json HanabiStateToJson(const hanabi::HanabiState& s) {
  json j;
  j["deck"] = json::array();
  for (const auto& c : s.deck) j["deck"].push_back(CardJson(c));
  j["hands"] = json::array();
  j["knowledge"] = json::array();
  for (int p = 0; p < 2; ++p) {
    json hand = json::array(), know = json::array();
    for (const auto& c : s.hands[p]) hand.push_back(CardJson(c));
    for (const auto& k : s.knowledge[p]) know.push_back(KnowledgeJson(k));
    j["hands"].push_back(hand);
    j["knowledge"].push_back(know);
  }
  j["stacks"] = s.stacks;
  j["discard_pile"] = json::array();
  for (const auto& c : s.discard_pile) j["discard_pile"].push_back(CardJson(c));
  j["reveal_tokens"] = s.reveal_tokens;
  j["lives"] = s.lives;
  j["current_player"] = s.current_player;
  j["final_turns_remaining"] = s.final_turns_remaining ? json(*s.final_turns_remaining) : json(nullptr);
  j["turn"] = s.turn;
  j["history"] = json::array();
  for (const auto& h : s.history) {
    json e = MoveJson(h.move);
    e["player"] = h.player;
    j["history"].push_back(e);
  }
  return j;
}

hanabi::HanabiState HanabiStateFromJson(const json& j) {
  hanabi::HanabiState s;
  for (const auto& c : j.value("deck", json::array())) s.deck.push_back(CardFromJson(c));
  for (int p = 0; p < 2; ++p) {
    for (const auto& c : j.at("hands").at(p)) s.hands[p].push_back(CardFromJson(c));
    if (j.contains("knowledge")) {
      for (const auto& k : j.at("knowledge").at(p)) s.knowledge[p].push_back(KnowledgeFromJson(k));
    } else {
      s.knowledge[p].assign(s.hands[p].size(), hanabi::CardKnowledge{});
    }
    if (s.knowledge[p].size() != s.hands[p].size()) throw ConfigError("knowledge must align with hand");
    for (std::size_t i = 0; i < s.hands[p].size(); ++i) {
      if (!s.knowledge[p][i].Admits(s.hands[p][i])) throw ConfigError("knowledge excludes the true card");
    }
  }
  s.stacks = j.at("stacks").get<std::array<int, hanabi::kNumColors>>();
  for (const auto& c : j.value("discard_pile", json::array())) s.discard_pile.push_back(CardFromJson(c));
  s.reveal_tokens = j.value("reveal_tokens", hanabi::kMaxTokens);
  s.lives = j.value("lives", hanabi::kMaxLives);
  s.current_player = j.value("current_player", 0);
  if (j.contains("final_turns_remaining") && !j["final_turns_remaining"].is_null()) {
    s.final_turns_remaining = j["final_turns_remaining"].get<int>();
  }
  s.turn = j.value("turn", 0);
  for (const auto& e : j.value("history", json::array())) {
    s.history.push_back({e.at("player").get<int>(), MoveFromJson(e)});
  }
  if (s.reveal_tokens < 0 || s.reveal_tokens > hanabi::kMaxTokens || s.lives < 0 || s.lives > hanabi::kMaxLives) {
    throw ConfigError("token or life count out of range");
  }
  return s;
}

json KitchenStateToJson(const kitchen::KitchenState& s) {
  json j;
  j["layout"] = s.layout->name();
  j["agents"] = json::array();
  for (const auto& a : s.agents) {
    j["agents"].push_back({{"pos", {a.pos.row, a.pos.col}}, {"facing", DirName(a.facing)}, {"held", ItemJson(a.held)}});
  }
  j["cookers"] = json::array();
  for (const auto& c : s.cookers) {
    j["cookers"].push_back({{"onions", c.onions}, {"status", CookerStatusName(c.status)}, {"remaining", c.remaining}});
  }
  j["counters"] = json::object();
  for (std::size_t i = 0; i < s.counter_items.size(); ++i) {
    if (s.counter_items[i] != kitchen::Item::kNone) j["counters"]["k" + std::to_string(i)] = ItemJson(s.counter_items[i]);
  }
  for (std::size_t i = 0; i < s.shared_items.size(); ++i) {
    if (s.shared_items[i] != kitchen::Item::kNone) j["counters"]["s" + std::to_string(i)] = ItemJson(s.shared_items[i]);
  }
  j["tick"] = s.tick;
  j["score"] = s.score;
  return j;
}

kitchen::KitchenState KitchenStateFromJson(const json& j) {
  auto layout = LoadKitchenLayout(j.at("layout").get<std::string>());
  kitchen::KitchenState s = kitchen::InitialState(layout);
  if (j.contains("agents")) {
    for (int p = 0; p < 2; ++p) {
      const auto& a = j["agents"].at(p);
      auto& dst = s.agents[p];
      if (a.contains("pos")) dst.pos = {a["pos"].at(0).get<int>(), a["pos"].at(1).get<int>()};
      dst.facing = DirFromJson(a.value("facing", std::string("up")));
      dst.held = ItemFromJson(a.value("held", json(nullptr)));
      if (!layout->Walkable(dst.pos)) throw ConfigError("agent not on a floor cell");
    }
    if (s.agents[0].pos == s.agents[1].pos) throw ConfigError("agents share a cell");
  }
  if (j.contains("cookers")) {
    if (j["cookers"].size() != s.cookers.size()) throw ConfigError("cooker count mismatch");
    for (std::size_t i = 0; i < s.cookers.size(); ++i) {
      const auto& c = j["cookers"][i];
      s.cookers[i].onions = c.value("onions", 0);
      s.cookers[i].status = CookerStatusFromJson(c.value("status", std::string("off")));
      s.cookers[i].remaining = c.value("remaining", 0);
      if (s.cookers[i].onions < 0 || s.cookers[i].onions > kitchen::kOnionsPerSoup) throw ConfigError("bad onion count");
      if (s.cookers[i].status != kitchen::Cooker::Status::kOff && s.cookers[i].onions != kitchen::kOnionsPerSoup) {
        throw ConfigError("only a full cooker can be on");
      }
    }
  }
  const json counters = j.value("counters", json::object());
  for (const auto& [name, item] : counters.items()) {
    const int id = std::stoi(name.substr(1));
    if (name[0] == 'k' && id >= 0 && id < static_cast<int>(s.counter_items.size())) {
      s.counter_items[id] = ItemFromJson(item);
    } else if (name[0] == 's' && id >= 0 && id < static_cast<int>(s.shared_items.size())) {
      s.shared_items[id] = ItemFromJson(item);
    } else {
      throw ConfigError("unknown counter " + name);
    }
  }
  s.tick = j.value("tick", 0);
  s.score = j.value("score", 0);
  return s;
}

json PursuitStateToJson(const pursuit::PursuitState& s) {
  json j;
  j["map"] = s.graph->name;
  j["mode"] = s.mode == pursuit::Mode::kCapture ? "capture" : "escape";
  j["agent_rooms"] = s.agent_rooms;
  j["adversary_room"] = s.adversary_room;
  j["door_open"] = s.door_open;
  j["generator_fixes_done"] = s.generator_fixes_done;
  j["downed"] = s.downed;
  j["escaped"] = s.escaped;
  j["turn"] = s.turn;
  return j;
}

pursuit::PursuitState PursuitStateFromJson(const json& j) {
  auto graph = LoadRoomGraph(j.at("map").get<std::string>());
  const auto mode = j.value("mode", std::string("capture")) == "escape" ? pursuit::Mode::kEscape : pursuit::Mode::kCapture;
  pursuit::PursuitState s = pursuit::InitialState(graph, mode);
  if (j.contains("agent_rooms")) s.agent_rooms = j["agent_rooms"].get<std::array<int, 2>>();
  s.adversary_room = j.value("adversary_room", s.adversary_room);
  if (j.contains("door_open")) {
    auto doors = j["door_open"].get<std::vector<bool>>();
    if (doors.size() != s.door_open.size()) throw ConfigError("door count mismatch");
    s.door_open = doors;
  }
  if (j.contains("generator_fixes_done")) {
    auto fixes = j["generator_fixes_done"].get<std::vector<int>>();
    if (fixes.size() != s.generator_fixes_done.size()) throw ConfigError("generator count mismatch");
    s.generator_fixes_done = fixes;
  }
  if (j.contains("downed")) s.downed = j["downed"].get<std::array<bool, 2>>();
  if (j.contains("escaped")) s.escaped = j["escaped"].get<std::array<bool, 2>>();
  s.turn = j.value("turn", 0);
  for (int r : {s.agent_rooms[0], s.agent_rooms[1], s.adversary_room}) {
    if (!graph->HasRoom(r)) throw ConfigError("unknown room " + std::to_string(r));
  }
  if (mode == pursuit::Mode::kEscape) {
    bool all = true;
    for (std::size_t i = 0; i < graph->generators.size(); ++i) {
      all = all && s.generator_fixes_done[i] >= graph->generators[i].fixes_required;
    }
    s.gate_open = all;
  }
  return s;
}

std::unique_ptr<GameEnv> EnvFromSnapshot(GameKind game, const json& state, const PlayerNames& names,
                                         bool include_partner_info) {
  switch (game) {
    case GameKind::kHanabi: return std::make_unique<HanabiEnv>(HanabiStateFromJson(state), names);
    case GameKind::kKitchen:
      return std::make_unique<KitchenEnv>(KitchenStateFromJson(state), names, kDefaultKitchenHorizon,
                                          text::KitchenTextOptions{include_partner_info});
    case GameKind::kCapture:
    case GameKind::kEscape: {
      json s = state;
      s["mode"] = game == GameKind::kCapture ? "capture" : "escape";
      return std::make_unique<PursuitEnv>(PursuitStateFromJson(s), names);
    }
  }
  throw ConfigError("unknown game");
}

json SeatView(const GameEnv& env, int player) {
  json v;
  v["game"] = std::string(GameKindName(env.kind()));
  v["seat"] = player;
  v["names"] = env.names();
  v["score"] = env.Score();
  v["terminal"] = env.IsTerminal();
  v["step"] = env.StepCount();
  const auto to_act = env.PlayersToAct();
  v["to_act"] = to_act;
  v["observation"] = env.Observation(player);
  if (const auto* h = dynamic_cast<const HanabiEnv*>(&env)) {
    const auto& s = h->state();
    const int partner = 1 - player;
    json d;
    d["stacks"] = s.stacks;
    d["reveal_tokens"] = s.reveal_tokens;
    d["lives"] = s.lives;
    d["deck_size"] = s.deck.size();
    d["discard_pile"] = json::array();
    for (const auto& c : s.discard_pile) d["discard_pile"].push_back(CardJson(c));
    d["my_knowledge"] = json::array();
    for (const auto& k : s.knowledge[player]) d["my_knowledge"].push_back(KnowledgeJson(k));
    d["partner_cards"] = json::array();
    for (const auto& c : s.hands[partner]) d["partner_cards"].push_back(CardJson(c));
    d["partner_knowledge"] = json::array();
    for (const auto& k : s.knowledge[partner]) d["partner_knowledge"].push_back(KnowledgeJson(k));
    d["current_player"] = s.current_player;
    v["hanabi"] = d;
  } else if (const auto* k = dynamic_cast<const KitchenEnv*>(&env)) {
    json d = KitchenStateToJson(k->state());
    d["grid"] = k->state().layout->rows();
    d["horizon"] = k->horizon();
    v["kitchen"] = d;
  } else if (const auto* p = dynamic_cast<const PursuitEnv*>(&env)) {
    json d = PursuitStateToJson(p->state());
    d["rooms"] = p->state().graph->rooms;
    d["doors"] = json::array();
    for (std::size_t i = 0; i < p->state().graph->doors.size(); ++i) {
      const auto& door = p->state().graph->doors[i];
      d["doors"].push_back({{"a", door.a}, {"b", door.b}, {"open", static_cast<bool>(p->state().door_open[i])}});
    }
    d["gate_open"] = p->state().gate_open;
    v["pursuit"] = d;
  }
  return v;
}

}  // namespace coord_arena
