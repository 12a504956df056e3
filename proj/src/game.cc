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

#include "coord_arena/game.h"

#include "coord_arena/errors.h"

namespace coord_arena {

std::string_view GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kHanabi: return "hanabi";
    case GameKind::kKitchen: return "kitchen";
    case GameKind::kCapture: return "capture";
    case GameKind::kEscape: return "escape";
  }
  return "unknown";
}

GameKind ParseGameKind(std::string_view name) {
  if (name == "hanabi") return GameKind::kHanabi;
  if (name == "kitchen" || name == "overcooked") return GameKind::kKitchen;
  if (name == "capture") return GameKind::kCapture;
  if (name == "escape") return GameKind::kEscape;
  throw ConfigError("unknown game: " + std::string(name));
}

std::optional<ActionId> FindAction(std::span<const ActionId> legal, std::string_view label) {
  for (const auto& a : legal) {
    if (a.label == label) return a;
  }
  return std::nullopt;
}

EpisodeResult RunEpisode(GameEnv& env, std::span<Agent* const> agents, int max_steps, Seed seed) {
  if (static_cast<int>(agents.size()) != env.NumPlayers()) {
    throw ConfigError("agent count must equal the engine's player count");
  }
  for (int p = 0; p < static_cast<int>(agents.size()); ++p) {
    agents[p]->BeginEpisode(Seed{seed.value + static_cast<std::uint64_t>(p)}, p);
  }

  EpisodeResult result;
  std::array<std::optional<ActionId>, 2> last_action;
  while (!env.IsTerminal() && env.StepCount() < max_steps) {
    std::vector<std::pair<int, ActionId>> decisions;
    for (int player : env.PlayersToAct()) {
      auto legal = env.LegalActions(player);
      if (legal.empty()) continue;
      Decision d;
      try {
        d = agents[player]->Decide(env, player, legal, last_action[1 - player]);
      } catch (const BackendFailure& e) {
        result.aborted = true;
        result.abort_reason = e.what();
        break;
      } catch (const ReplayExhausted& e) {
        result.aborted = true;
        result.abort_reason = e.what();
        break;
      }
      // Agents hand back an entry of the list they were given; re-resolve it
      // by label so a bad index can never reach the engine.
      auto resolved = FindAction(legal, d.action.label);
      if (!resolved) throw IllegalAction("agent returned an action outside the legal list");
      TranscriptRecord rec;
      rec.player = player;
      rec.action = *resolved;
      rec.observation = env.Observation(player);
      rec.latency_seconds = d.latency_seconds;
      rec.fallback = d.fallback;
      rec.trace = d.trace;
      result.latencies.push_back(d.latency_seconds);
      result.transcript.push_back(std::move(rec));
      decisions.emplace_back(player, *resolved);
    }
    if (result.aborted) break;
    env.Step(decisions);
    for (const auto& [player, action] : decisions) last_action[player] = action;
  }
  result.score = env.Score();
  result.turns = static_cast<int>(result.transcript.size());
  result.steps = env.StepCount();
  return result;
}

}  // namespace coord_arena
