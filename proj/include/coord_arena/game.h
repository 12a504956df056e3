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

#ifndef COORD_ARENA_GAME_H_
#define COORD_ARENA_GAME_H_

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coord_arena/rng.h"

namespace coord_arena {

enum class GameKind { kHanabi, kKitchen, kCapture, kEscape };

std::string_view GameKindName(GameKind kind);
// Accepts "hanabi", "kitchen" (alias "overcooked"), "capture", "escape".
GameKind ParseGameKind(std::string_view name);

// One entry of a legal-action list. `index` is only meaningful relative to
// the list it came from; `label` is the canonical text shown to agents.
struct ActionId {
  GameKind game = GameKind::kHanabi;
  int index = 0;
  std::string label;

  friend bool operator==(const ActionId&, const ActionId&) = default;
};

using PlayerNames = std::array<std::string, 2>;
inline PlayerNames DefaultNames() { return {"Alice", "Bob"}; }

struct DecisionTrace;

// Something that happened while the engine advanced, e.g. {"action", 0,
// "Alice plays Red 1"} or {"draw", 0, "Alice draws a card"}.
struct StepEvent {
  std::string type;
  int player = -1;
  std::string text;
};

struct TranscriptRecord {
  int player = 0;
  ActionId action;
  std::string observation;
  double latency_seconds = 0.0;
  bool fallback = false;
  std::shared_ptr<const DecisionTrace> trace;
};

struct EpisodeResult {
  int score = 0;
  int turns = 0;  // == transcript.size()
  int steps = 0;  // engine steps (Hanabi turns, kitchen ticks, pursuit rounds)
  std::vector<TranscriptRecord> transcript;
  std::vector<double> latencies;
  bool aborted = false;
  std::string abort_reason;
};

// Engine-agnostic episode contract. Each step, every player returned by
// PlayersToAct() must supply one action from its current legal list; Step()
// then advances the engine by one unit (a Hanabi turn, a kitchen tick, a
// pursuit round). Kitchen steps may have no players to act while macro-actions
// are still executing.
class GameEnv {
 public:
  virtual ~GameEnv() = default;

  virtual GameKind kind() const = 0;
  virtual int NumPlayers() const { return 2; }
  virtual bool IsTerminal() const = 0;
  virtual int Score() const = 0;
  virtual int StepCount() const = 0;
  virtual std::vector<int> PlayersToAct() const = 0;
  virtual std::vector<ActionId> LegalActions(int player) const = 0;
  // Observation text for `player` including the trailing action block.
  virtual std::string Observation(int player) const = 0;
  virtual std::string GameDescription(int player) const = 0;
  // The conservative action used when an agent cannot produce one.
  virtual ActionId SafestAction(int player, std::span<const ActionId> legal) const = 0;
  virtual std::vector<StepEvent> Step(std::span<const std::pair<int, ActionId>> decisions) = 0;
  virtual std::unique_ptr<GameEnv> Clone() const = 0;
  virtual const PlayerNames& names() const = 0;
};

struct Decision {
  ActionId action;
  double latency_seconds = 0.0;
  bool fallback = false;
  std::shared_ptr<const DecisionTrace> trace;
};

class Agent {
 public:
  virtual ~Agent() = default;
  // Called once per episode before the first decision.
  virtual void BeginEpisode(Seed seed, int player) { (void)seed; (void)player; }
  virtual Decision Decide(const GameEnv& env, int player, std::span<const ActionId> legal,
                          const std::optional<ActionId>& partner_last) = 0;
  virtual std::string Name() const = 0;
};

// Loops observe -> decide -> apply until the engine is terminal or
// `max_steps` engine steps have run. BackendFailure from an agent aborts the
// episode and returns the partial transcript with `aborted` set.
EpisodeResult RunEpisode(GameEnv& env, std::span<Agent* const> agents, int max_steps, Seed seed);

// Finds `label` in `legal`, comparing labels exactly.
std::optional<ActionId> FindAction(std::span<const ActionId> legal, std::string_view label);

}  // namespace coord_arena

#endif  // COORD_ARENA_GAME_H_
