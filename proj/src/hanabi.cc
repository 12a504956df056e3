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

#include "coord_arena/hanabi.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "coord_arena/errors.h"

namespace coord_arena::hanabi {
namespace {

constexpr std::array<std::string_view, kNumColors> kColorNames = {"Red", "Yellow", "Green", "White",
                                                                  "Blue"};

void Draw(HanabiState& state, int player, Outcome& out) {
  if (state.deck.empty()) return;
  Card c = state.deck.back();
  state.deck.pop_back();
  state.hands[player].push_back(c);
  state.knowledge[player].push_back(CardKnowledge{});
  out.drawn = c;
  if (state.deck.empty()) {
    state.final_turns_remaining = 2;
  }
}

void RemoveCard(HanabiState& state, int player, int index) {
  state.hands[player].erase(state.hands[player].begin() + index);
  state.knowledge[player].erase(state.knowledge[player].begin() + index);
}

}  // namespace

std::string_view ColorName(Color c) { return kColorNames[static_cast<int>(c)]; }

std::optional<Color> ParseColor(std::string_view name) {
  for (int i = 0; i < kNumColors; ++i) {
    std::string_view n = kColorNames[i];
    if (name.size() != n.size()) continue;
    bool eq = std::equal(name.begin(), name.end(), n.begin(), [](char a, char b) {
      return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
    });
    if (eq) return static_cast<Color>(i);
  }
  if (name.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(name[0]))) {
      case 'R': return Color::kRed;
      case 'Y': return Color::kYellow;
      case 'G': return Color::kGreen;
      case 'W': return Color::kWhite;
      case 'B': return Color::kBlue;
    }
  }
  return std::nullopt;
}

std::string CardName(const Card& card) {
  return std::string(ColorName(card.color)) + " " + std::to_string(card.rank);
}

HanabiState Deal(Seed seed) {
  HanabiState state;
  state.deck.reserve(kDeckSize);
  for (int c = 0; c < kNumColors; ++c) {
    for (int r = 1; r <= kNumRanks; ++r) {
      for (int k = 0; k < kRankCounts[r - 1]; ++k) {
        state.deck.push_back(Card{static_cast<Color>(c), r});
      }
    }
  }
  Pcg32 rng = MakeRng(seed);
  rng.Shuffle(std::span<Card>(state.deck));
  Outcome ignored;
  for (int p = 0; p < 2; ++p) {
    for (int i = 0; i < kHandSize; ++i) Draw(state, p, ignored);
  }
  return state;
}

bool IsTerminal(const HanabiState& state) {
  if (state.lives <= 0) return true;
  if (std::all_of(state.stacks.begin(), state.stacks.end(), [](int s) { return s == kNumRanks; })) {
    return true;
  }
  return state.final_turns_remaining.has_value() && *state.final_turns_remaining <= 0;
}

int Score(const HanabiState& state) {
  if (state.lives <= 0) return 0;
  return std::accumulate(state.stacks.begin(), state.stacks.end(), 0);
}

std::vector<Move> LegalMoves(const HanabiState& state, const RuleOptions& opts) {
  if (IsTerminal(state)) throw TerminalState("no legal actions in a terminal Hanabi state");
  std::vector<Move> moves;
  const int me = state.current_player;
  const auto& partner_hand = state.hands[1 - me];
  if (state.reveal_tokens > 0) {
    for (int c = 0; c < kNumColors; ++c) {
      if (std::any_of(partner_hand.begin(), partner_hand.end(),
                      [c](const Card& card) { return static_cast<int>(card.color) == c; })) {
        moves.push_back(Move::RevealColor(static_cast<Color>(c)));
      }
    }
    for (int r = 1; r <= kNumRanks; ++r) {
      if (std::any_of(partner_hand.begin(), partner_hand.end(),
                      [r](const Card& card) { return card.rank == r; })) {
        moves.push_back(Move::RevealRank(r));
      }
    }
  }
  const int held = static_cast<int>(state.hands[me].size());
  for (int i = 0; i < held; ++i) moves.push_back(Move::Play(i));
  if (state.reveal_tokens < kMaxTokens || opts.allow_discard_at_max_tokens) {
    for (int i = 0; i < held; ++i) moves.push_back(Move::Discard(i));
  }
  return moves;
}

std::string MoveLabel(const Move& move, std::string_view partner_name) {
  const std::string partner(partner_name);
  switch (move.type) {
    case Move::Type::kPlay: return "Play my Card " + std::to_string(move.value);
    case Move::Type::kDiscard: return "Discard my Card " + std::to_string(move.value);
    case Move::Type::kRevealColor:
      return "Reveal " + partner + "'s " + std::string(ColorName(static_cast<Color>(move.value))) +
             " color cards";
    case Move::Type::kRevealRank:
      return "Reveal " + partner + "'s rank " + std::to_string(move.value) + " cards";
  }
  return {};
}

std::string HistoryLabel(const Move& move, std::string_view partner_name) {
  const std::string partner(partner_name);
  switch (move.type) {
    case Move::Type::kPlay: return "Play Card " + std::to_string(move.value);
    case Move::Type::kDiscard: return "Discard Card " + std::to_string(move.value);
    case Move::Type::kRevealColor:
      return "Reveal " + partner + "'s " + std::string(ColorName(static_cast<Color>(move.value))) +
             " Color Cards";
    case Move::Type::kRevealRank:
      return "Reveal " + partner + "'s Rank " + std::to_string(move.value) + " Cards";
  }
  return {};
}

std::vector<ActionId> LegalActions(const HanabiState& state, const PlayerNames& names,
                                   const RuleOptions& opts) {
  std::vector<ActionId> out;
  const auto moves = LegalMoves(state, opts);
  const std::string& partner = names[1 - state.current_player];
  out.reserve(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i) {
    out.push_back(ActionId{GameKind::kHanabi, static_cast<int>(i), MoveLabel(moves[i], partner)});
  }
  return out;
}

std::optional<Move> MoveForLabel(const HanabiState& state, std::string_view label,
                                 const PlayerNames& names, const RuleOptions& opts) {
  const std::string& partner = names[1 - state.current_player];
  for (const auto& m : LegalMoves(state, opts)) {
    if (MoveLabel(m, partner) == label) return m;
  }
  return std::nullopt;
}

Outcome ApplyMove(HanabiState& state, const Move& move, const RuleOptions& opts) {
  const auto legal = LegalMoves(state, opts);
  if (std::find(legal.begin(), legal.end(), move) == legal.end()) {
    throw IllegalAction("illegal Hanabi move");
  }
  const bool final_round = state.final_turns_remaining.has_value();
  const int me = state.current_player;
  const int partner = 1 - me;
  Outcome out;
  switch (move.type) {
    case Move::Type::kPlay: {
      Card c = state.hands[me][move.value];
      RemoveCard(state, me, move.value);
      out.card = c;
      int& stack = state.stacks[static_cast<int>(c.color)];
      if (c.rank == stack + 1) {
        stack = c.rank;
        out.play_success = true;
        if (c.rank == kNumRanks && state.reveal_tokens < kMaxTokens) {
          ++state.reveal_tokens;
          out.token_gained = true;
        }
      } else {
        state.discard_pile.push_back(c);
        --state.lives;
        out.life_lost = true;
      }
      Draw(state, me, out);
      break;
    }
    case Move::Type::kDiscard: {
      Card c = state.hands[me][move.value];
      RemoveCard(state, me, move.value);
      out.card = c;
      state.discard_pile.push_back(c);
      if (state.reveal_tokens < kMaxTokens) {
        ++state.reveal_tokens;
        out.token_gained = true;
      }
      Draw(state, me, out);
      break;
    }
    case Move::Type::kRevealColor:
    case Move::Type::kRevealRank: {
      --state.reveal_tokens;
      auto& hand = state.hands[partner];
      auto& know = state.knowledge[partner];
      for (std::size_t i = 0; i < hand.size(); ++i) {
        if (move.type == Move::Type::kRevealColor) {
          const std::uint8_t bit = 1u << move.value;
          if (static_cast<int>(hand[i].color) == move.value) {
            know[i].colors = bit;
            know[i].touched = true;
            out.touched.push_back(static_cast<int>(i));
          } else {
            know[i].colors &= static_cast<std::uint8_t>(~bit);
          }
        } else {
          const std::uint8_t bit = 1u << (move.value - 1);
          if (hand[i].rank == move.value) {
            know[i].ranks = bit;
            know[i].touched = true;
            out.touched.push_back(static_cast<int>(i));
          } else {
            know[i].ranks &= static_cast<std::uint8_t>(~bit);
          }
        }
      }
      break;
    }
  }
  state.history.push_back(HistoryEntry{me, move});
  // The turn that draws the last card sets the counter; it only starts
  // counting down on the following turns.
  if (final_round) --*state.final_turns_remaining;
  state.current_player = partner;
  ++state.turn;
  return out;
}

Outcome ApplyAction(HanabiState& state, const ActionId& action, const PlayerNames& names,
                    const RuleOptions& opts) {
  auto move = MoveForLabel(state, action.label, names, opts);
  if (!move) throw IllegalAction("not a legal Hanabi action: " + action.label);
  return ApplyMove(state, *move, opts);
}

std::array<std::optional<int>, kNumColors> NextPlayable(const HanabiState& state) {
  std::array<std::optional<int>, kNumColors> out;
  for (int c = 0; c < kNumColors; ++c) {
    if (state.stacks[c] < kNumRanks) out[c] = state.stacks[c] + 1;
  }
  return out;
}

bool IsPlayable(const HanabiState& state, const Card& card) {
  return state.stacks[static_cast<int>(card.color)] + 1 == card.rank;
}

bool KnownPlayable(const HanabiState& state, const CardKnowledge& k) {
  for (int c = 0; c < kNumColors; ++c) {
    if (!k.ColorPlausible(static_cast<Color>(c))) continue;
    for (int r = 1; r <= kNumRanks; ++r) {
      if (k.RankPlausible(r) && state.stacks[c] + 1 != r) return false;
    }
  }
  return true;
}

bool KnownUseless(const HanabiState& state, const CardKnowledge& k) {
  for (int c = 0; c < kNumColors; ++c) {
    if (!k.ColorPlausible(static_cast<Color>(c))) continue;
    for (int r = 1; r <= kNumRanks; ++r) {
      if (k.RankPlausible(r) && r > state.stacks[c]) return false;
    }
  }
  return true;
}

int CardsAccountedFor(const HanabiState& state) {
  int n = static_cast<int>(state.deck.size() + state.discard_pile.size());
  for (const auto& h : state.hands) n += static_cast<int>(h.size());
  for (int s : state.stacks) n += s;
  return n;
}

}  // namespace coord_arena::hanabi
