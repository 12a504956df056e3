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

#include "coord_arena/scripted.h"

#include <algorithm>
#include <limits>
#include <optional>

#include "coord_arena/envs.h"
#include "coord_arena/errors.h"

namespace coord_arena {
namespace hanabi {

bool IsDead(const HanabiState& s, const Card& card) {
  const int c = static_cast<int>(card.color);
  if (card.rank <= s.stacks[c]) return true;
  // Unreachable when every copy of some lower, still-needed rank is gone.
  for (int r = s.stacks[c] + 1; r < card.rank; ++r) {
    const auto gone = std::count(s.discard_pile.begin(), s.discard_pile.end(), Card{card.color, r});
    if (gone == kRankCounts[r - 1]) return true;
  }
  return false;
}

bool IsCritical(const HanabiState& s, const Card& card) {
  if (IsDead(s, card)) return false;
  const auto gone = std::count(s.discard_pile.begin(), s.discard_pile.end(), card);
  return gone == kRankCounts[card.rank - 1] - 1;
}

}  // namespace hanabi

namespace {

using hanabi::Card;
using hanabi::CardKnowledge;
using hanabi::HanabiState;
using hanabi::Move;

std::optional<ActionId> Lookup(std::span<const ActionId> legal, const Move& move, const std::string& partner) {
  return FindAction(legal, hanabi::MoveLabel(move, partner));
}

std::optional<ActionId> FirstWithPrefix(std::span<const ActionId> legal, std::string_view prefix) {
  for (const auto& a : legal) {
    if (a.label.rfind(prefix, 0) == 0) return a;
  }
  return std::nullopt;
}

// Knowledge of the partner's hand after a hypothetical reveal.
std::vector<CardKnowledge> AfterReveal(const HanabiState& s, int target, const Move& move) {
  auto know = s.knowledge[target];
  const auto& hand = s.hands[target];
  for (std::size_t i = 0; i < hand.size(); ++i) {
    if (move.type == Move::Type::kRevealColor) {
      const auto bit = static_cast<std::uint8_t>(1u << move.value);
      const bool hit = static_cast<int>(hand[i].color) == move.value;
      know[i].colors = hit ? bit : static_cast<std::uint8_t>(know[i].colors & ~bit);
      know[i].touched = know[i].touched || hit;
    } else {
      const auto bit = static_cast<std::uint8_t>(1u << (move.value - 1));
      const bool hit = hand[i].rank == move.value;
      know[i].ranks = hit ? bit : static_cast<std::uint8_t>(know[i].ranks & ~bit);
      know[i].touched = know[i].touched || hit;
    }
  }
  return know;
}

std::vector<Move> CandidateReveals(const HanabiState& s, int target) {
  std::vector<Move> out;
  for (int c = 0; c < hanabi::kNumColors; ++c) {
    for (const auto& card : s.hands[target]) {
      if (static_cast<int>(card.color) == c) {
        out.push_back(Move::RevealColor(static_cast<hanabi::Color>(c)));
        break;
      }
    }
  }
  for (int r = 1; r <= hanabi::kNumRanks; ++r) {
    for (const auto& card : s.hands[target]) {
      if (card.rank == r) {
        out.push_back(Move::RevealRank(r));
        break;
      }
    }
  }
  return out;
}

ActionId AnyReveal(std::span<const ActionId> legal) {
  if (auto a = FirstWithPrefix(legal, "Reveal")) return *a;
  return legal.front();
}

ActionId OracleHanabi(const HanabiEnv& env, int me, std::span<const ActionId> legal) {
  const HanabiState& s = env.state();
  const auto& names = env.names();
  const std::string partner = names[1 - me];
  const auto& hand = s.hands[me];

  std::optional<int> play;
  for (std::size_t i = 0; i < hand.size(); ++i) {
    if (!hanabi::IsPlayable(s, hand[i])) continue;
    if (!play || hand[i].rank < hand[*play].rank) play = static_cast<int>(i);
  }
  if (play) {
    if (auto a = Lookup(legal, Move::Play(*play), partner)) return *a;
  }

  const bool can_discard = FirstWithPrefix(legal, "Discard").has_value();
  if (can_discard) {
    for (std::size_t i = 0; i < hand.size(); ++i) {
      if (hanabi::IsDead(s, hand[i])) return *Lookup(legal, Move::Discard(static_cast<int>(i)), partner);
    }
  }
  // Duplicates of a card held elsewhere are free to throw.
  auto duplicate = [&](std::size_t i) {
    for (std::size_t j = 0; j < hand.size(); ++j) {
      if (j != i && hand[j] == hand[i]) return true;
    }
    return std::find(s.hands[1 - me].begin(), s.hands[1 - me].end(), hand[i]) != s.hands[1 - me].end();
  };
  std::optional<int> discard;
  int best_key = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < hand.size(); ++i) {
    const int c = static_cast<int>(hand[i].color);
    // Prefer duplicates, then non-critical cards far from playable.
    const int key = (duplicate(i) ? 100 : 0) + (hanabi::IsCritical(s, hand[i]) ? -100 : 0) +
                    (hand[i].rank - s.stacks[c]);
    if (key > best_key) {
      best_key = key;
      discard = static_cast<int>(i);
    }
  }
  bool partner_can_play = false;
  for (const auto& c : s.hands[1 - me]) partner_can_play = partner_can_play || hanabi::IsPlayable(s, c);
  const bool costly = best_key < 100 && (best_key <= -90 || partner_can_play || s.deck.size() <= 2);
  if (s.reveal_tokens > 0 && (!can_discard || costly)) return AnyReveal(legal);
  if (can_discard && discard) return *Lookup(legal, Move::Discard(*discard), partner);
  return AnyReveal(legal);
}

ActionId RuleHanabi(const HanabiEnv& env, int me, std::span<const ActionId> legal) {
  const HanabiState& s = env.state();
  const std::string partner = env.names()[1 - me];
  const auto& know = s.knowledge[me];

  for (std::size_t i = 0; i < know.size(); ++i) {
    if (hanabi::KnownPlayable(s, know[i])) {
      if (auto a = Lookup(legal, Move::Play(static_cast<int>(i)), partner)) return *a;
    }
  }

  if (s.reveal_tokens > 0) {
    const int target = 1 - me;
    const auto& hand = s.hands[target];
    std::optional<Move> best;
    int best_gain = 0;
    std::optional<Move> progress;
    for (const Move& m : CandidateReveals(s, target)) {
      const auto after = AfterReveal(s, target, m);
      int gain = 0;
      bool touches_playable = false;
      for (std::size_t i = 0; i < hand.size(); ++i) {
        if (hanabi::KnownPlayable(s, after[i]) && !hanabi::KnownPlayable(s, s.knowledge[target][i])) ++gain;
        if (after[i] != s.knowledge[target][i] && hanabi::IsPlayable(s, hand[i])) touches_playable = true;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = m;
      }
      if (!progress && touches_playable) progress = m;
    }
    if (best) {
      if (auto a = Lookup(legal, *best, partner)) return *a;
    }
    const bool can_discard = FirstWithPrefix(legal, "Discard").has_value();
    if (progress && (!can_discard || s.reveal_tokens >= 4)) {
      if (auto a = Lookup(legal, *progress, partner)) return *a;
    }
  }

  for (std::size_t i = 0; i < know.size(); ++i) {
    if (hanabi::KnownUseless(s, know[i])) {
      if (auto a = Lookup(legal, Move::Discard(static_cast<int>(i)), partner)) return *a;
    }
  }
  for (std::size_t i = 0; i < know.size(); ++i) {
    if (!know[i].touched) {
      if (auto a = Lookup(legal, Move::Discard(static_cast<int>(i)), partner)) return *a;
    }
  }
  if (auto a = FirstWithPrefix(legal, "Discard")) return *a;
  return AnyReveal(legal);
}

// ---------------------------------------------------------------- Kitchen

ActionId GreedyKitchen(const KitchenEnv& env, int me, std::span<const ActionId> legal) {
  using kitchen::Cell;
  using kitchen::Item;
  using kitchen::MacroAction;
  using V = MacroAction::Verb;
  const auto& s = env.state();
  const Item held = s.agents[me].held;
  const Item partner_held = s.agents[1 - me].held;
  const auto options = kitchen::MacroActions(s, me);

  bool blocked = false;
  // Nearest feasible option satisfying `want`; notes when the partner is in the way.
  auto pick = [&](auto want) -> std::optional<MacroAction> {
    const kitchen::MacroOption* best = nullptr;
    for (const auto& o : options) {
      if (!want(o.macro)) continue;
      if (!o.feasible) {
        if (o.reach.status == kitchen::Reach::Status::kBlocked) blocked = true;
        continue;
      }
      if (!best || o.reach.distance < best->reach.distance) best = &o;
    }
    if (!best) return std::nullopt;
    return best->macro;
  };
  auto chosen = [&](const MacroAction& m) { return *FindAction(legal, m.Label()); };

  int onions_needed = 0, cooking = 0, cooked = 0;
  int best_cooker_onions = -1;
  for (const auto& c : s.cookers) {
    if (c.status == kitchen::Cooker::Status::kOff) onions_needed += kitchen::kOnionsPerSoup - c.onions;
    if (c.status == kitchen::Cooker::Status::kCooking) ++cooking;
    if (c.status == kitchen::Cooker::Status::kCooked) ++cooked;
  }
  if (partner_held == Item::kOnion) --onions_needed;
  const int plates_out = (partner_held == Item::kPlate ? 1 : 0) + (held == Item::kPlate ? 1 : 0);
  const bool plate_needed = cooking + cooked > plates_out - (held == Item::kPlate ? 1 : 0);
  auto on_shared = [](const MacroAction& m) { return m.target.kind == Cell::kSharedCounter; };
  auto on_counter = [](const MacroAction& m) {
    return m.target.kind == Cell::kSharedCounter || m.target.kind == Cell::kCounter;
  };

  std::optional<MacroAction> m;
  switch (held) {
    case Item::kSoup:
      m = pick([](const MacroAction& a) { return a.verb == V::kDeliver; });
      if (!m && !blocked) m = pick([&](const MacroAction& a) { return a.verb == V::kPlaceOn && on_shared(a); });
      break;
    case Item::kOnion: {
      // Fill the fullest cooker first so soups start sooner.
      for (const auto& o : options) {
        if (o.macro.verb == V::kPlaceIn && s.cookers[o.macro.target.id].status == kitchen::Cooker::Status::kOff &&
            s.cookers[o.macro.target.id].onions < kitchen::kOnionsPerSoup &&
            o.reach.status != kitchen::Reach::Status::kInaccessible) {
          best_cooker_onions = std::max(best_cooker_onions, s.cookers[o.macro.target.id].onions);
        }
      }
      m = pick([&](const MacroAction& a) {
        return a.verb == V::kPlaceIn && s.cookers[a.target.id].onions == best_cooker_onions;
      });
      if (!m && !blocked && onions_needed > 0) {
        m = pick([&](const MacroAction& a) { return a.verb == V::kPlaceOn && on_shared(a); });
      }
      if (!m && !blocked && onions_needed <= 0 && plate_needed) {
        // Spare onion while a soup waits for a plate: free the hands.
        m = pick([&](const MacroAction& a) { return a.verb == V::kPlaceOn && a.target.kind == Cell::kCounter; });
      }
      break;
    }
    case Item::kPlate:
      m = pick([](const MacroAction& a) { return a.verb == V::kPickUp && a.item == Item::kSoup &&
                                                 a.target.kind == Cell::kCooker; });
      if (!m && !blocked && cooking + cooked > 0) {
        bool reachable = false;
        for (const auto& o : options) {
          if (o.macro.target.kind == Cell::kCooker && o.macro.verb == V::kPickUp &&
              o.reach.status != kitchen::Reach::Status::kInaccessible) {
            reachable = true;
          }
        }
        if (!reachable) m = pick([&](const MacroAction& a) { return a.verb == V::kPlaceOn && on_shared(a); });
      }
      break;
    case Item::kNone:
      m = pick([&](const MacroAction& a) { return a.verb == V::kPickUp && a.item == Item::kSoup && on_counter(a); });
      if (!m && plate_needed && (cooked > 0 || onions_needed <= 0)) {
        m = pick([](const MacroAction& a) { return a.verb == V::kPickUp && a.item == Item::kPlate; });
      }
      if (!m && onions_needed > 0) {
        m = pick([](const MacroAction& a) { return a.verb == V::kPickUp && a.item == Item::kOnion; });
      }
      if (!m && plate_needed) {
        m = pick([](const MacroAction& a) { return a.verb == V::kPickUp && a.item == Item::kPlate; });
      }
      break;
  }
  if (m) return chosen(*m);
  if (!blocked) {
    // Idle: step aside when standing in the partner's way.
    for (const auto& o : kitchen::MacroActions(s, 1 - me)) {
      if (o.reach.status == kitchen::Reach::Status::kBlocked) blocked = true;
    }
  }
  auto stuck = [&](int p) {
    return kitchen::Ground(s, p, MacroAction::MoveAway()).front() == kitchen::Primitive::kStay;
  };
  if (blocked && held != Item::kNone && partner_held == Item::kNone && stuck(me) && stuck(1 - me)) {
    // Neither side can clear the lane; hand the item over via a counter.
    if (auto h = pick([&](const MacroAction& a) { return a.verb == V::kPlaceOn && on_counter(a); })) return chosen(*h);
  }
  if (blocked) {
    if (auto a = FindAction(legal, "move away.")) return *a;
  }
  return env.SafestAction(me, legal);
}

// ---------------------------------------------------------------- Pursuit

ActionId GreedyPursuit(const PursuitEnv& env, int me, std::span<const ActionId> legal) {
  const auto& s = env.state();
  const int here = s.agent_rooms[me];
  auto toward = [&](const std::vector<int>& goals, bool avoid_adversary) -> std::optional<ActionId> {
    if (goals.empty()) return std::nullopt;
    const auto dist = pursuit::Distances(s, goals);
    const auto danger = pursuit::Distances(s, {s.adversary_room});
    std::optional<ActionId> best;
    int best_d = std::numeric_limits<int>::max();
    int best_room = 0;
    for (const auto& a : legal) {
      auto act = pursuit::ParseActionLabel(a.label);
      if (!act || act->type != pursuit::PursuitAction::Type::kMove) continue;
      const int d = dist.at(act->room);
      if (d < 0 || d >= dist.at(here)) continue;
      if (avoid_adversary && danger.at(act->room) >= 0 && danger.at(act->room) <= 1 && d > 0) continue;
      // Seat 0 breaks ties toward low room ids, seat 1 toward high ones, so
      // the pair approaches from different sides.
      const bool better = d < best_d || (d == best_d && (me == 0 ? act->room < best_room : act->room > best_room));
      if (better) {
        best = a;
        best_d = d;
        best_room = act->room;
      }
    }
    return best;
  };
  auto named = [&](std::string_view label) { return FindAction(legal, label); };

  if (s.mode == pursuit::Mode::kCapture) {
    if (auto a = toward({s.adversary_room}, false)) return *a;
  } else {
    if (auto a = named("Exit through the gate")) return *a;
    if (auto a = named("Fix generator")) return *a;
    std::vector<int> goals;
    for (std::size_t i = 0; i < s.graph->generators.size(); ++i) {
      if (s.generator_fixes_done[i] < s.graph->generators[i].fixes_required) goals.push_back(s.graph->generators[i].room);
    }
    if (goals.empty() && s.graph->gate_room) goals.push_back(*s.graph->gate_room);
    if (auto a = toward(goals, true)) return *a;
    if (auto a = toward(goals, false)) return *a;
  }
  if (auto a = named("Press button")) return *a;
  return env.SafestAction(me, legal);
}

}  // namespace

std::vector<std::string> ScriptedPolicyNames() {
  return {"greedy-kitchen", "rule-hanabi", "greedy-pursuit", "oracle-hanabi", "random-legal"};
}

ActionId ScriptedPolicy(std::string_view name, const GameEnv& env, int player, std::span<const ActionId> legal) {
  if (legal.empty()) throw IllegalAction("no legal actions");
  if (name == "random-legal") throw ConfigError("random-legal needs a RandomAgent");
  if (const auto* h = dynamic_cast<const HanabiEnv*>(&env)) {
    if (name == "oracle-hanabi") return OracleHanabi(*h, player, legal);
    if (name == "rule-hanabi") return RuleHanabi(*h, player, legal);
  } else if (const auto* k = dynamic_cast<const KitchenEnv*>(&env)) {
    if (name == "greedy-kitchen") return GreedyKitchen(*k, player, legal);
  } else if (const auto* p = dynamic_cast<const PursuitEnv*>(&env)) {
    if (name == "greedy-pursuit") return GreedyPursuit(*p, player, legal);
  }
  throw ConfigError("policy " + std::string(name) + " does not play " + std::string(GameKindName(env.kind())));
}

ScriptedAgent::ScriptedAgent(std::string policy) : policy_(std::move(policy)) {
  const auto names = ScriptedPolicyNames();
  if (std::find(names.begin(), names.end(), policy_) == names.end()) {
    throw ConfigError("unknown scripted policy: " + policy_);
  }
}

Decision ScriptedAgent::Decide(const GameEnv& env, int player, std::span<const ActionId> legal,
                               const std::optional<ActionId>&) {
  Decision d;
  d.action = ScriptedPolicy(policy_, env, player, legal);
  return d;
}

RandomAgent::RandomAgent(std::uint64_t base_seed) : base_seed_(base_seed), rng_(base_seed) {}

void RandomAgent::BeginEpisode(Seed seed, int) {
  rng_ = Pcg32(seed.value, (base_seed_ << 1) | 1u);
}

Decision RandomAgent::Decide(const GameEnv&, int, std::span<const ActionId> legal, const std::optional<ActionId>&) {
  if (legal.empty()) throw IllegalAction("no legal actions");
  Decision d;
  d.action = legal[rng_.Bounded(static_cast<std::uint32_t>(legal.size()))];
  return d;
}

}  // namespace coord_arena
