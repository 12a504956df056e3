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

#ifndef COORD_ARENA_HANABI_H_
#define COORD_ARENA_HANABI_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coord_arena/game.h"
#include "coord_arena/rng.h"

namespace coord_arena::hanabi {

inline constexpr int kNumColors = 5;
inline constexpr int kNumRanks = 5;
inline constexpr int kHandSize = 5;
inline constexpr int kMaxTokens = 8;
inline constexpr int kMaxLives = 3;
inline constexpr int kDeckSize = 50;
// Copies of each rank within one color.
inline constexpr std::array<int, kNumRanks> kRankCounts = {3, 2, 2, 2, 1};

// Display order used by every text template: Red, Yellow, Green, White, Blue.
enum class Color : std::uint8_t { kRed = 0, kYellow, kGreen, kWhite, kBlue };

std::string_view ColorName(Color c);
std::optional<Color> ParseColor(std::string_view name);

struct Card {
  Color color = Color::kRed;
  int rank = 1;

  friend bool operator==(const Card&, const Card&) = default;
};

std::string CardName(const Card& card);  // "Red 1"

// Plausible colors/ranks as bitmasks (bit i = color i / rank i+1).
struct CardKnowledge {
  std::uint8_t colors = 0x1F;
  std::uint8_t ranks = 0x1F;
  bool touched = false;  // ever included in a clue

  bool ColorPlausible(Color c) const { return colors & (1u << static_cast<int>(c)); }
  bool RankPlausible(int rank) const { return ranks & (1u << (rank - 1)); }
  bool Admits(const Card& c) const { return ColorPlausible(c.color) && RankPlausible(c.rank); }

  friend bool operator==(const CardKnowledge&, const CardKnowledge&) = default;
};

struct Move {
  enum class Type { kPlay, kDiscard, kRevealColor, kRevealRank };
  Type type = Type::kPlay;
  int value = 0;  // card index, color ordinal, or rank

  static Move Play(int i) { return {Type::kPlay, i}; }
  static Move Discard(int i) { return {Type::kDiscard, i}; }
  static Move RevealColor(Color c) { return {Type::kRevealColor, static_cast<int>(c)}; }
  static Move RevealRank(int r) { return {Type::kRevealRank, r}; }

  friend bool operator==(const Move&, const Move&) = default;
};

struct HistoryEntry {
  int player = 0;
  Move move;
};

struct HanabiState {
  // Top of the deck is the back of the vector.
  std::vector<Card> deck;
  std::array<std::vector<Card>, 2> hands;
  std::array<std::vector<CardKnowledge>, 2> knowledge;
  std::array<int, kNumColors> stacks{};
  std::vector<Card> discard_pile;  // chronological
  int reveal_tokens = kMaxTokens;
  int lives = kMaxLives;
  int current_player = 0;
  std::optional<int> final_turns_remaining;
  int turn = 0;
  std::vector<HistoryEntry> history;
};

struct Outcome {
  std::optional<Card> card;  // played or discarded card
  bool play_success = false;
  bool life_lost = false;
  bool token_gained = false;
  std::optional<Card> drawn;
  std::vector<int> touched;  // indices touched by a reveal
};

struct RuleOptions {
  // Standard rules forbid discarding with a full token pool.
  bool allow_discard_at_max_tokens = false;
};

HanabiState Deal(Seed seed);

bool IsTerminal(const HanabiState& state);
int Score(const HanabiState& state);

std::vector<Move> LegalMoves(const HanabiState& state, const RuleOptions& opts = {});
// Labels follow the lettered "Available Actions" wording, e.g.
// "Reveal Bob's Green color cards", "Play my Card 0", "Discard my Card 3".
std::string MoveLabel(const Move& move, std::string_view partner_name);
// Short form used in "My Action History", e.g. "Reveal Bob's Rank 3 Cards".
std::string HistoryLabel(const Move& move, std::string_view partner_name);

std::vector<ActionId> LegalActions(const HanabiState& state, const PlayerNames& names = DefaultNames(),
                                   const RuleOptions& opts = {});

Outcome ApplyMove(HanabiState& state, const Move& move, const RuleOptions& opts = {});
// Throws IllegalAction unless `action.label` is in the current legal list.
Outcome ApplyAction(HanabiState& state, const ActionId& action, const PlayerNames& names = DefaultNames(),
                    const RuleOptions& opts = {});
std::optional<Move> MoveForLabel(const HanabiState& state, std::string_view label,
                                 const PlayerNames& names = DefaultNames(), const RuleOptions& opts = {});

// Next rank playable on each stack; nullopt when the stack is complete.
std::array<std::optional<int>, kNumColors> NextPlayable(const HanabiState& state);

bool IsPlayable(const HanabiState& state, const Card& card);
// True when every card the knowledge admits is playable right now.
bool KnownPlayable(const HanabiState& state, const CardKnowledge& k);
// True when every admitted card can never be played again.
bool KnownUseless(const HanabiState& state, const CardKnowledge& k);

int CardsAccountedFor(const HanabiState& state);

}  // namespace coord_arena::hanabi

#endif  // COORD_ARENA_HANABI_H_
