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

#ifndef COORD_ARENA_ENVS_H_
#define COORD_ARENA_ENVS_H_

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "coord_arena/game.h"
#include "coord_arena/hanabi.h"
#include "coord_arena/kitchen.h"
#include "coord_arena/pursuit.h"
#include "coord_arena/text.h"
#include "json.hpp"

namespace coord_arena {

inline constexpr int kDefaultKitchenHorizon = 400;

struct EnvConfig {
  GameKind game = GameKind::kHanabi;
  // Kitchen layout or room-map name (resolved under data/layouts or
  // data/maps) or a path to a file. Empty selects the game's default.
  std::string layout;
  Seed seed;
  PlayerNames names = DefaultNames();
  bool include_partner_info = true;
  int horizon = kDefaultKitchenHorizon;  // kitchen ticks
  hanabi::RuleOptions hanabi_rules;
};

std::string DefaultLayout(GameKind game);
std::shared_ptr<const kitchen::KitchenLayout> LoadKitchenLayout(const std::string& name_or_path);
std::shared_ptr<const pursuit::RoomGraph> LoadRoomGraph(const std::string& name_or_path);

class HanabiEnv final : public GameEnv {
 public:
  HanabiEnv(hanabi::HanabiState state, PlayerNames names, hanabi::RuleOptions rules = {});

  GameKind kind() const override { return GameKind::kHanabi; }
  bool IsTerminal() const override { return hanabi::IsTerminal(state_); }
  int Score() const override { return hanabi::Score(state_); }
  int StepCount() const override { return state_.turn; }
  std::vector<int> PlayersToAct() const override;
  std::vector<ActionId> LegalActions(int player) const override;
  std::string Observation(int player) const override;
  std::string GameDescription(int player) const override;
  ActionId SafestAction(int player, std::span<const ActionId> legal) const override;
  std::vector<StepEvent> Step(std::span<const std::pair<int, ActionId>> decisions) override;
  std::unique_ptr<GameEnv> Clone() const override { return std::make_unique<HanabiEnv>(*this); }
  const PlayerNames& names() const override { return names_; }

  const hanabi::HanabiState& state() const { return state_; }
  const hanabi::RuleOptions& rules() const { return rules_; }

 private:
  hanabi::HanabiState state_;
  PlayerNames names_;
  hanabi::RuleOptions rules_;
};

// Each player with no macro-action in progress picks one; every Step() then
// advances the world by one tick, feeding each active macro's next primitive.
class KitchenEnv final : public GameEnv {
 public:
  KitchenEnv(kitchen::KitchenState state, PlayerNames names, int horizon = kDefaultKitchenHorizon,
             text::KitchenTextOptions text_opts = {});

  GameKind kind() const override { return GameKind::kKitchen; }
  bool IsTerminal() const override { return state_.tick >= horizon_; }
  int Score() const override { return state_.score; }
  int StepCount() const override { return state_.tick; }
  std::vector<int> PlayersToAct() const override;
  std::vector<ActionId> LegalActions(int player) const override;
  std::string Observation(int player) const override;
  std::string GameDescription(int player) const override;
  ActionId SafestAction(int player, std::span<const ActionId> legal) const override;
  std::vector<StepEvent> Step(std::span<const std::pair<int, ActionId>> decisions) override;
  std::unique_ptr<GameEnv> Clone() const override { return std::make_unique<KitchenEnv>(*this); }
  const PlayerNames& names() const override { return names_; }

  const kitchen::KitchenState& state() const { return state_; }
  const std::optional<kitchen::MacroAction>& active_macro(int player) const { return macros_[player]; }
  int horizon() const { return horizon_; }

 private:
  kitchen::KitchenState state_;
  PlayerNames names_;
  int horizon_;
  text::KitchenTextOptions text_opts_;
  std::array<std::optional<kitchen::MacroAction>, 2> macros_;
};

class PursuitEnv final : public GameEnv {
 public:
  PursuitEnv(pursuit::PursuitState state, PlayerNames names);

  GameKind kind() const override;
  bool IsTerminal() const override { return state_.terminal(); }
  int Score() const override { return pursuit::Score(state_); }
  int StepCount() const override { return state_.turn; }
  std::vector<int> PlayersToAct() const override;
  std::vector<ActionId> LegalActions(int player) const override;
  std::string Observation(int player) const override;
  std::string GameDescription(int player) const override;
  ActionId SafestAction(int player, std::span<const ActionId> legal) const override;
  std::vector<StepEvent> Step(std::span<const std::pair<int, ActionId>> decisions) override;
  std::unique_ptr<GameEnv> Clone() const override { return std::make_unique<PursuitEnv>(*this); }
  const PlayerNames& names() const override { return names_; }

  const pursuit::PursuitState& state() const { return state_; }

 private:
  pursuit::PursuitState state_;
  PlayerNames names_;
};

std::unique_ptr<GameEnv> MakeEnv(const EnvConfig& config);

// Structured snapshots used by scenario files and the play service.
nlohmann::json HanabiStateToJson(const hanabi::HanabiState& state);
hanabi::HanabiState HanabiStateFromJson(const nlohmann::json& j);
nlohmann::json KitchenStateToJson(const kitchen::KitchenState& state);
kitchen::KitchenState KitchenStateFromJson(const nlohmann::json& j);  // reads "layout"
nlohmann::json PursuitStateToJson(const pursuit::PursuitState& state);
pursuit::PursuitState PursuitStateFromJson(const nlohmann::json& j);  // reads "map"

// Builds an environment around a stored snapshot (`state` as written by the
// *StateToJson functions).
std::unique_ptr<GameEnv> EnvFromSnapshot(GameKind game, const nlohmann::json& state, const PlayerNames& names,
                                         bool include_partner_info = true);

// What `player` is allowed to see. Hanabi views never contain the player's
// own cards, only their knowledge.
nlohmann::json SeatView(const GameEnv& env, int player);

}  // namespace coord_arena

#endif  // COORD_ARENA_ENVS_H_
