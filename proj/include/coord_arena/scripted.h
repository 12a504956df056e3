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

#ifndef COORD_ARENA_SCRIPTED_H_
#define COORD_ARENA_SCRIPTED_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coord_arena/game.h"
#include "coord_arena/hanabi.h"
#include "coord_arena/rng.h"

namespace coord_arena {

// Names accepted by ScriptedPolicy.
std::vector<std::string> ScriptedPolicyNames();

// Deterministic hand-written policies; always return a member of `legal`.
//   oracle-hanabi   sees its own cards (debug upper bound)
//   rule-hanabi     plays known-playable cards, gives play clues, discards chop
//   greedy-kitchen  onion -> cooker -> plate -> soup -> delivery
//   greedy-pursuit  BFS toward the thief, or generators then the gate
ActionId ScriptedPolicy(std::string_view name, const GameEnv& env, int player, std::span<const ActionId> legal);

class ScriptedAgent final : public Agent {
 public:
  explicit ScriptedAgent(std::string policy);
  Decision Decide(const GameEnv& env, int player, std::span<const ActionId> legal,
                  const std::optional<ActionId>& partner_last) override;
  std::string Name() const override { return "scripted:" + policy_; }

 private:
  std::string policy_;
};

// Uniform over the legal list; the stream is keyed by (base seed, episode
// seed) so a fixed configuration reproduces its choices.
class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t base_seed = 0);
  void BeginEpisode(Seed seed, int player) override;
  Decision Decide(const GameEnv& env, int player, std::span<const ActionId> legal,
                  const std::optional<ActionId>& partner_last) override;
  std::string Name() const override { return "random:" + std::to_string(base_seed_); }

 private:
  std::uint64_t base_seed_;
  Pcg32 rng_;
};

namespace hanabi {
bool IsCritical(const HanabiState& state, const Card& card);
bool IsDead(const HanabiState& state, const Card& card);
}  // namespace hanabi

}  // namespace coord_arena

#endif  // COORD_ARENA_SCRIPTED_H_
