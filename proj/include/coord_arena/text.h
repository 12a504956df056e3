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

#ifndef COORD_ARENA_TEXT_H_
#define COORD_ARENA_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coord_arena/game.h"
#include "coord_arena/hanabi.h"
#include "coord_arena/kitchen.h"
#include "coord_arena/pursuit.h"

namespace coord_arena::text {

// The three parts of an agent prompt. `observation` is the state description
// without the action block; Full() joins observation and action block the
// way the planner sees them.
struct PromptBundle {
  std::string system_preamble;
  std::string observation;
  std::string legal_action_block;

  std::string Full() const { return observation + "\n\n" + legal_action_block; }
};

struct KitchenTextOptions {
  bool include_partner_info = true;
};

// "A", "B", ..., "Z", "AA", ...
std::string OptionLetter(int index);
// "A. first\nB. second"
std::string LetteredList(std::span<const std::string> labels);
// "[first, second]"
std::string BracketList(std::span<const std::string> labels);
std::vector<std::string> Labels(std::span<const ActionId> actions);

std::string HanabiObservation(const hanabi::HanabiState& state, int player, const PlayerNames& names);
std::string KitchenObservation(const kitchen::KitchenState& state, int player, const PlayerNames& names,
                               const KitchenTextOptions& opts = {});
std::string PursuitObservation(const pursuit::PursuitState& state, int player, const PlayerNames& names);

std::string DescribeHanabi(const hanabi::HanabiState& state, int player, const PlayerNames& names = DefaultNames());
std::string DescribeKitchen(const kitchen::KitchenState& state, int player, const PlayerNames& names = DefaultNames(),
                            const KitchenTextOptions& opts = {});
std::string DescribePursuit(const pursuit::PursuitState& state, int player, const PlayerNames& names = DefaultNames());

// Action block for a legal list: lettered for Hanabi and the room games,
// bracketed for the kitchen.
std::string ActionBlock(GameKind game, std::span<const ActionId> legal);

// Rules + conventions + answer-format instruction for `player`.
// `layout` selects the kitchen layout description and is ignored elsewhere.
std::string GameDescription(GameKind game, const PlayerNames& names, int player = 0,
                            std::string_view layout = "cramped_room");
std::string GameRules(GameKind game);

std::string TomSystemPrompt(GameKind game, const PlayerNames& names, int player);
std::string VerifierSystemPrompt();

// Loads templates/<name>.txt with the trailing newline removed.
std::string LoadTemplate(std::string_view name);

}  // namespace coord_arena::text

#endif  // COORD_ARENA_TEXT_H_
