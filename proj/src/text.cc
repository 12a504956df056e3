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

#include "coord_arena/text.h"

#include <map>
#include <sstream>

#include "coord_arena/resources.h"

namespace coord_arena::text {
namespace {

using hanabi::CardKnowledge;
using hanabi::Color;

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string KnowledgeText(const CardKnowledge& k) {
  std::vector<std::string> colors, ranks;
  for (int c = 0; c < hanabi::kNumColors; ++c) {
    if (k.ColorPlausible(static_cast<Color>(c))) colors.emplace_back(hanabi::ColorName(static_cast<Color>(c)));
  }
  for (int r = 1; r <= hanabi::kNumRanks; ++r) {
    if (k.RankPlausible(r)) ranks.push_back(std::to_string(r));
  }
  return "[" + Join(colors, ", ") + "] [" + Join(ranks, ", ") + "]";
}

std::string ReachSentence(const std::string& station, const kitchen::Reach& r, const std::string& partner) {
  using S = kitchen::Reach::Status;
  switch (r.status) {
    case S::kReachable: return station + " is " + std::to_string(r.distance) + " units away.";
    case S::kDetour:
      return station + " is " + std::to_string(r.distance) + " units away blocked by " + partner + ".";
    case S::kBlocked: return station + " is blocked by " + partner + ".";
    case S::kInaccessible: return station + " is inaccessible.";
  }
  return {};
}

std::string LocationInformation(const kitchen::KitchenState& state, int player, const std::string& partner,
                                 bool closest_counter) {
  using kitchen::Cell;
  std::vector<std::string> parts;
  for (Cell kind : {Cell::kOnionDispenser, Cell::kPlateDispenser, Cell::kCooker, Cell::kDelivery,
                    Cell::kSharedCounter}) {
    const int n = static_cast<int>(state.layout->stations(kind).size());
    for (int i = 0; i < n; ++i) {
      kitchen::StationRef ref{kind, i};
      parts.push_back(ReachSentence(kitchen::StationName(ref), kitchen::StationReach(state, player, ref), partner));
    }
  }
  if (closest_counter) {
    if (auto k = kitchen::ClosestEmptyCounter(state, player)) {
      parts.push_back("Closest empty kitchen counter " + kitchen::StationName(k->first) + " is " +
                      std::to_string(k->second) + " units away.");
    }
  }
  return Join(parts, " ");
}

std::string ItemPhrase(kitchen::Item item) { return std::string(kitchen::ItemName(item)); }

std::string GameTitle(GameKind game) {
  switch (game) {
    case GameKind::kHanabi: return "Hanabi";
    case GameKind::kKitchen: return "Overcooked";
    case GameKind::kCapture: return "Collab Capture";
    case GameKind::kEscape: return "Collab Escape";
  }
  return {};
}

}  // namespace

std::string LoadTemplate(std::string_view name) {
  std::string s = LoadResource("templates/" + std::string(name) + ".txt");
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::string OptionLetter(int index) {
  std::string out;
  int n = index;
  do {
    out.insert(out.begin(), static_cast<char>('A' + n % 26));
    n = n / 26 - 1;
  } while (n >= 0);
  return out;
}

std::string LetteredList(std::span<const std::string> labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += "\n";
    out += OptionLetter(static_cast<int>(i)) + ". " + labels[i];
  }
  return out;
}

std::string BracketList(std::span<const std::string> labels) {
  return "[" + Join(std::vector<std::string>(labels.begin(), labels.end()), ", ") + "]";
}

std::vector<std::string> Labels(std::span<const ActionId> actions) {
  std::vector<std::string> out;
  out.reserve(actions.size());
  for (const auto& a : actions) out.push_back(a.label);
  return out;
}

std::string ActionBlock(GameKind game, std::span<const ActionId> legal) {
  const auto labels = Labels(legal);
  if (game == GameKind::kKitchen) return "Available Actions: " + BracketList(labels);
  return "Available Actions:\n" + LetteredList(labels);
}

std::string HanabiObservation(const hanabi::HanabiState& state, int player, const PlayerNames& names) {
  const int partner = 1 - player;
  const std::string& me = names[player];
  const std::string& other = names[partner];
  std::ostringstream out;
  if (state.current_player == player) {
    out << "It is currently My (" << me << ") turn.\n";
  } else {
    out << "It is currently " << other << "'s turn.\n";
  }
  out << "Current Stacks:\n";
  {
    std::vector<std::string> parts;
    for (int c = 0; c < hanabi::kNumColors; ++c) {
      std::string name(hanabi::ColorName(static_cast<Color>(c)));
      parts.push_back(name + " - " + name + " " + std::to_string(state.stacks[c]));
    }
    out << Join(parts, ", ") << "\n";
  }
  out << "My cards based on my knowledge:\n";
  for (std::size_t i = 0; i < state.knowledge[player].size(); ++i) {
    out << "Card " << i << " could be: " << KnowledgeText(state.knowledge[player][i]) << "\n";
  }
  out << "I can see " << other << "'s Cards are:\n";
  for (std::size_t i = 0; i < state.hands[partner].size(); ++i) {
    out << "[Card " << i << ": " << hanabi::CardName(state.hands[partner][i]) << "]\n";
  }
  out << other << "'s Knowledge about his cards:\n";
  for (std::size_t i = 0; i < state.knowledge[partner].size(); ++i) {
    out << other << " believes his Card " << i << " could be: " << KnowledgeText(state.knowledge[partner][i])
        << "\n";
  }
  out << "Remaining Reveal Tokens: " << state.reveal_tokens << "\n";
  out << "Remaining Lives: " << state.lives << "\n";
  out << "Deck Size: " << state.deck.size() << "\n";
  {
    std::vector<std::string> cards;
    for (const auto& c : state.discard_pile) cards.push_back(hanabi::CardName(c));
    out << "The discard pile is: [" << Join(cards, ", ") << "]\n";
  }
  {
    std::vector<std::string> mine;
    for (const auto& h : state.history) {
      if (h.player == player) mine.push_back(hanabi::HistoryLabel(h.move, other));
    }
    out << "My Action History: [" << Join(mine, ", ") << "]\n";
  }
  out << "The next playable cards for each stack are:";
  const auto next = hanabi::NextPlayable(state);
  for (int c = 0; c < hanabi::kNumColors; ++c) {
    std::string name(hanabi::ColorName(static_cast<Color>(c)));
    if (next[c]) {
      out << "\nOnly " << name << " " << *next[c] << " can be played on " << name << " Stack";
    } else {
      out << "\n" << name << " Stack is Full.";
    }
  }
  return out.str();
}

std::string DescribeHanabi(const hanabi::HanabiState& state, int player, const PlayerNames& names) {
  std::vector<ActionId> legal;
  if (!hanabi::IsTerminal(state) && state.current_player == player) legal = hanabi::LegalActions(state, names);
  return HanabiObservation(state, player, names) + "\n\n" + ActionBlock(GameKind::kHanabi, legal);
}

std::string KitchenObservation(const kitchen::KitchenState& state, int player, const PlayerNames& names,
                               const KitchenTextOptions& opts) {
  using kitchen::Cell;
  using kitchen::Cooker;
  const int partner = 1 - player;
  std::ostringstream out;
  out << "<Inventory>: I am holding " << ItemPhrase(state.agents[player].held) << ".";
  if (opts.include_partner_info) {
    out << " " << names[partner] << " is holding " << ItemPhrase(state.agents[partner].held) << ".";
  }
  out << "\n\n<My Location Information>: " << LocationInformation(state, player, names[partner], true);
  if (opts.include_partner_info) {
    out << "\n\n<" << names[partner] << "'s Location Information>: "
        << LocationInformation(state, partner, names[player], false);
  }
  std::vector<std::string> env;
  for (std::size_t i = 0; i < state.cookers.size(); ++i) {
    const Cooker& c = state.cookers[i];
    const std::string name = "c" + std::to_string(i);
    env.push_back(name + " contains " + std::to_string(c.onions) + " out of 3 onions.");
    switch (c.status) {
      case Cooker::Status::kOff:
        env.push_back(name + " is off.");
        env.push_back("soup in " + name + " is not cooking.");
        break;
      case Cooker::Status::kCooking:
        env.push_back(name + " is on.");
        env.push_back("soup in " + name + " is still cooking.");
        break;
      case Cooker::Status::kCooked:
        env.push_back(name + " is off.");
        env.push_back("soup in " + name + " is cooked.");
        break;
    }
  }
  for (std::size_t i = 0; i < state.shared_items.size(); ++i) {
    const std::string name = "s" + std::to_string(i);
    if (state.shared_items[i] == kitchen::Item::kNone) {
      env.push_back(name + " is empty.");
    } else {
      env.push_back(name + " contains " + ItemPhrase(state.shared_items[i]) + ".");
    }
  }
  for (std::size_t i = 0; i < state.counter_items.size(); ++i) {
    if (state.counter_items[i] != kitchen::Item::kNone) {
      env.push_back("k" + std::to_string(i) + " contains " + ItemPhrase(state.counter_items[i]) + ".");
    }
  }
  out << "\n\n<Environment Details>: " << Join(env, " ");
  return out.str();
}

std::string DescribeKitchen(const kitchen::KitchenState& state, int player, const PlayerNames& names,
                            const KitchenTextOptions& opts) {
  return KitchenObservation(state, player, names, opts) + "\n\n" +
         ActionBlock(GameKind::kKitchen, kitchen::LegalActions(state, player));
}

std::string PursuitObservation(const pursuit::PursuitState& state, int player, const PlayerNames& names) {
  using pursuit::Mode;
  const int partner = 1 - player;
  const bool escape = state.mode == Mode::kEscape;
  std::vector<std::string> lines;
  {
    std::vector<std::string> s;
    if (state.escaped[player]) {
      s.push_back("I (" + names[player] + ") have escaped.");
    } else if (state.downed[player]) {
      s.push_back("I (" + names[player] + ") am downed in Room " + std::to_string(state.agent_rooms[player]) + ".");
    } else {
      s.push_back("I (" + names[player] + ") am in Room " + std::to_string(state.agent_rooms[player]) + ".");
    }
    if (state.escaped[partner]) {
      s.push_back(names[partner] + " has escaped.");
    } else if (state.downed[partner]) {
      s.push_back(names[partner] + " is downed in Room " + std::to_string(state.agent_rooms[partner]) + ".");
    } else {
      s.push_back(names[partner] + " is in Room " + std::to_string(state.agent_rooms[partner]) + ".");
    }
    s.push_back(std::string(escape ? "Killer" : "Thief") + " is in Room " + std::to_string(state.adversary_room) +
                ".");
    lines.push_back(Join(s, " "));
  }
  {
    std::vector<std::string> s;
    const auto& doors = state.graph->doors;
    for (std::size_t i = 0; i < doors.size(); ++i) {
      if (state.door_open[i]) continue;
      const int a = std::min(doors[i].a, doors[i].b);
      const int b = std::max(doors[i].a, doors[i].b);
      s.push_back("Door between Room " + std::to_string(a) + " and " + std::to_string(b) + " is closed.");
    }
    if (!s.empty()) lines.push_back(Join(s, " "));
  }
  if (auto it = state.graph->buttons.find(state.agent_rooms[player]);
      it != state.graph->buttons.end() && !state.downed[player] && !state.escaped[player]) {
    std::vector<std::string> ds;
    for (int door : it->second) {
      const auto& d = state.graph->doors[door];
      ds.push_back("the door between Room " + std::to_string(std::min(d.a, d.b)) + " and " +
                   std::to_string(std::max(d.a, d.b)));
    }
    lines.push_back("There is a button in my room that toggles " + Join(ds, " and ") + ".");
  }
  if (escape) {
    std::vector<std::string> s;
    const auto& gens = state.graph->generators;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const int left = gens[i].fixes_required - state.generator_fixes_done[i];
      const std::string where = "Generator in room " + std::to_string(gens[i].room);
      if (left <= 0) {
        s.push_back(where + " is fixed.");
      } else {
        s.push_back(where + " still needs " + std::to_string(left) + (left == 1 ? " fix." : " fixes."));
      }
    }
    if (state.graph->gate_room) {
      s.push_back("The exit gate is in Room " + std::to_string(*state.graph->gate_room) + ".");
    }
    s.push_back(state.gate_open ? "The exit gate is open." : "The exit gate is closed.");
    lines.push_back(Join(s, " "));
  }
  return Join(lines, "\n");
}

std::string DescribePursuit(const pursuit::PursuitState& state, int player, const PlayerNames& names) {
  const GameKind kind = state.mode == pursuit::Mode::kCapture ? GameKind::kCapture : GameKind::kEscape;
  return PursuitObservation(state, player, names) + "\n\n" +
         ActionBlock(kind, pursuit::LegalActions(state, player));
}

std::string GameRules(GameKind game) {
  switch (game) {
    case GameKind::kHanabi: return LoadTemplate("hanabi_rules");
    case GameKind::kKitchen: return LoadTemplate("kitchen_rules");
    case GameKind::kCapture: return LoadTemplate("capture_rules");
    case GameKind::kEscape: return LoadTemplate("escape_rules");
  }
  return {};
}

std::string GameDescription(GameKind game, const PlayerNames& names, int player, std::string_view layout) {
  std::map<std::string, std::string> vars{{"me", names[player]}, {"partner", names[1 - player]}};
  switch (game) {
    case GameKind::kHanabi:
      vars["rules"] = LoadTemplate("hanabi_rules");
      vars["conventions"] = LoadTemplate("hanabi_conventions");
      return FillTemplate(LoadTemplate("hanabi_system"), vars);
    case GameKind::kKitchen: {
      std::string desc;
      const std::string path = "layouts/" + std::string(layout) + ".txt";
      if (HasResource(path)) {
        desc = LoadResource(path);
        while (!desc.empty() && desc.back() == '\n') desc.pop_back();
        desc = FillTemplate(desc, vars);
      }
      vars["layout_description"] = desc;
      vars["rules"] = LoadTemplate("kitchen_rules");
      vars["conventions"] = LoadTemplate("kitchen_conventions");
      return FillTemplate(LoadTemplate("kitchen_system"), vars);
    }
    case GameKind::kCapture:
    case GameKind::kEscape:
      vars["game_title"] = GameTitle(game);
      vars["rules"] = GameRules(game);
      return FillTemplate(LoadTemplate("pursuit_system"), vars);
  }
  return {};
}

std::string TomSystemPrompt(GameKind game, const PlayerNames& names, int player) {
  std::map<std::string, std::string> vars{{"me", names[player]}, {"partner", names[1 - player]}};
  if (game == GameKind::kHanabi) {
    vars["game_intro"] = "card game Hanabi";
    vars["game_play"] = "the card game Hanabi";
    vars["rules"] = LoadTemplate("hanabi_rules");
  } else {
    vars["game_intro"] = "game " + GameTitle(game);
    vars["game_play"] = "the game " + GameTitle(game);
    vars["rules"] = GameRules(game);
  }
  return FillTemplate(LoadTemplate("tom_system"), vars);
}

std::string VerifierSystemPrompt() { return LoadTemplate("verifier_system"); }

}  // namespace coord_arena::text
