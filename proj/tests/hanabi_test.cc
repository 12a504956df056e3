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

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "coord_arena/errors.h"
#include "coord_arena/hanabi.h"
#include "coord_arena/rng.h"
#include "doctest.h"

using namespace coord_arena;
using namespace coord_arena::hanabi;

namespace {

Card C(Color c, int r) { return Card{c, r}; }

// A mid-game state with explicit hands and a short deck.
HanabiState Fixed(std::vector<Card> mine, std::vector<Card> partner, std::vector<Card> deck = {}) {
  HanabiState s;
  s.hands = {mine, partner};
  s.knowledge[0].assign(mine.size(), CardKnowledge{});
  s.knowledge[1].assign(partner.size(), CardKnowledge{});
  s.deck = std::move(deck);
  return s;
}

std::set<std::string> LabelSet(const HanabiState& s) {
  std::set<std::string> out;
  for (const auto& a : LegalActions(s)) out.insert(a.label);
  return out;
}

// Independent enumeration of the expected legal labels for the player to act.
std::set<std::string> ExpectedLabels(const HanabiState& s) {
  const int p = s.current_player;
  const auto& partner = s.hands[1 - p];
  std::set<std::string> out;
  const int n = static_cast<int>(s.hands[p].size());
  for (int i = 0; i < n; ++i) {
    out.insert("Play my Card " + std::to_string(i));
    if (s.reveal_tokens < kMaxTokens) out.insert("Discard my Card " + std::to_string(i));
  }
  if (s.reveal_tokens > 0) {
    static const char* kColorNames[] = {"Red", "Yellow", "Green", "White", "Blue"};
    for (const auto& c : partner) {
      out.insert(std::string("Reveal Bob's ") + kColorNames[static_cast<int>(c.color)] + " color cards");
      out.insert("Reveal Bob's rank " + std::to_string(c.rank) + " cards");
    }
  }
  return out;
}

// Knowledge model kept by the test: plausible sets per card, updated by
// applying clue semantics card by card.
struct KnowledgeOracle {
  std::array<std::vector<std::pair<std::set<int>, std::set<int>>>, 2> sets;

  static std::pair<std::set<int>, std::set<int>> Full() { return {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}}; }

  explicit KnowledgeOracle(const HanabiState& s) {
    for (int p = 0; p < 2; ++p) sets[p].assign(s.hands[p].size(), Full());
  }

  void Observe(const HanabiState& before, const Move& m, const HanabiState& after) {
    const int p = before.current_player;
    if (m.type == Move::Type::kPlay || m.type == Move::Type::kDiscard) {
      sets[p].erase(sets[p].begin() + m.value);
      if (after.hands[p].size() == before.hands[p].size()) sets[p].push_back(Full());
      return;
    }
    const int target = 1 - p;
    for (std::size_t i = 0; i < before.hands[target].size(); ++i) {
      const Card& card = before.hands[target][i];
      auto& [colors, ranks] = sets[target][i];
      if (m.type == Move::Type::kRevealColor) {
        if (static_cast<int>(card.color) == m.value) {
          colors = {m.value};
        } else {
          colors.erase(m.value);
        }
      } else {
        if (card.rank == m.value) {
          ranks = {m.value};
        } else {
          ranks.erase(m.value);
        }
      }
    }
  }

  void Check(const HanabiState& s) const {
    for (int p = 0; p < 2; ++p) {
      REQUIRE(sets[p].size() == s.knowledge[p].size());
      for (std::size_t i = 0; i < sets[p].size(); ++i) {
        for (int c = 0; c < kNumColors; ++c) {
          REQUIRE(s.knowledge[p][i].ColorPlausible(static_cast<Color>(c)) == (sets[p][i].first.count(c) > 0));
        }
        for (int r = 1; r <= kNumRanks; ++r) {
          REQUIRE(s.knowledge[p][i].RankPlausible(r) == (sets[p][i].second.count(r) > 0));
        }
        REQUIRE(s.knowledge[p][i].Admits(s.hands[p][i]));
      }
    }
  }
};

}  // namespace

TEST_SUITE("hanabi") {
  TEST_CASE("deal builds the standard 50-card deck") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto s = Deal(Seed{seed});
      CHECK(s.deck.size() == 40);
      CHECK(s.hands[0].size() == 5);
      CHECK(s.hands[1].size() == 5);
      CHECK(s.reveal_tokens == 8);
      CHECK(s.lives == 3);
      std::array<std::array<int, 6>, 5> count{};
      for (const auto& c : s.deck) ++count[static_cast<int>(c.color)][c.rank];
      for (const auto& h : s.hands) {
        for (const auto& c : h) ++count[static_cast<int>(c.color)][c.rank];
      }
      for (int c = 0; c < 5; ++c) {
        CHECK(count[c][1] == 3);
        CHECK(count[c][2] == 2);
        CHECK(count[c][3] == 2);
        CHECK(count[c][4] == 2);
        CHECK(count[c][5] == 1);
      }
      for (const auto& k : s.knowledge) {
        for (const auto& ck : k) CHECK(ck == CardKnowledge{});
      }
    }
    const auto a = Deal(Seed{42});
    const auto b = Deal(Seed{42});
    CHECK(a.hands == b.hands);
    CHECK(a.deck == b.deck);
    CHECK(Deal(Seed{1}).deck != Deal(Seed{2}).deck);
  }

  TEST_CASE("legal actions match an exhaustive enumeration") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto s = Deal(Seed{seed});
      CHECK(LabelSet(s) == ExpectedLabels(s));
      s.reveal_tokens = 5;
      CHECK(LabelSet(s) == ExpectedLabels(s));
    }
  }

  TEST_CASE("no reveals without tokens; one color option for a monochrome hand") {
    auto s = Fixed({C(Color::kRed, 1), C(Color::kRed, 2)},
                   {C(Color::kGreen, 1), C(Color::kGreen, 3), C(Color::kGreen, 3)});
    s.reveal_tokens = 0;
    for (const auto& l : LabelSet(s)) CHECK(l.rfind("Reveal", 0) == std::string::npos);
    s.reveal_tokens = 4;
    int colors = 0;
    for (const auto& l : LabelSet(s)) colors += l.find("color cards") != std::string::npos;
    CHECK(colors == 1);
    CHECK(LabelSet(s).count("Reveal Bob's Green color cards") == 1);
  }

  TEST_CASE("discard is not offered at the token cap") {
    auto s = Deal(Seed{3});
    for (const auto& l : LabelSet(s)) CHECK(l.rfind("Discard", 0) == std::string::npos);
    RuleOptions lenient;
    lenient.allow_discard_at_max_tokens = true;
    bool any = false;
    for (const auto& a : LegalActions(s, DefaultNames(), lenient)) any |= a.label.rfind("Discard", 0) == 0;
    CHECK(any);
  }

  TEST_CASE("playing a red 1 on an empty stack succeeds") {
    auto s = Fixed({C(Color::kRed, 1)}, {C(Color::kBlue, 2)}, {C(Color::kWhite, 3)});
    const auto out = ApplyMove(s, Move::Play(0));
    CHECK(out.play_success);
    CHECK(s.stacks[0] == 1);
    CHECK(s.lives == 3);
    CHECK(s.hands[0].size() == 1);
    CHECK(s.hands[0][0] == C(Color::kWhite, 3));
    CHECK(s.current_player == 1);
  }

  TEST_CASE("a misplay costs a life and goes to the discard pile") {
    auto s = Fixed({C(Color::kRed, 3)}, {C(Color::kBlue, 2)}, {C(Color::kWhite, 3)});
    const auto out = ApplyMove(s, Move::Play(0));
    CHECK_FALSE(out.play_success);
    CHECK(out.life_lost);
    CHECK(s.lives == 2);
    CHECK(s.discard_pile == std::vector<Card>{C(Color::kRed, 3)});
  }

  TEST_CASE("completing a stack with a 5 grants a token") {
    auto s = Fixed({C(Color::kWhite, 5)}, {C(Color::kBlue, 2)}, {C(Color::kRed, 1)});
    s.stacks[static_cast<int>(Color::kWhite)] = 4;
    s.reveal_tokens = 7;
    const auto out = ApplyMove(s, Move::Play(0));
    CHECK(out.token_gained);
    CHECK(s.reveal_tokens == 8);
    CHECK(s.stacks[static_cast<int>(Color::kWhite)] == 5);
    s = Fixed({C(Color::kWhite, 5)}, {C(Color::kBlue, 2)}, {C(Color::kRed, 1)});
    s.stacks[static_cast<int>(Color::kWhite)] = 4;
    ApplyMove(s, Move::Play(0));
    CHECK(s.reveal_tokens == 8);  // already capped
  }

  TEST_CASE("rank clue updates positive and negative knowledge") {
    auto s = Fixed({C(Color::kRed, 1)}, {C(Color::kRed, 1), C(Color::kBlue, 1), C(Color::kGreen, 2),
                                         C(Color::kWhite, 3), C(Color::kYellow, 4)});
    KnowledgeOracle oracle(s);
    const auto before = s;
    const auto out = ApplyMove(s, Move::RevealRank(1));
    oracle.Observe(before, Move::RevealRank(1), s);
    oracle.Check(s);
    CHECK(out.touched == std::vector<int>{0, 1});
    CHECK(s.reveal_tokens == 7);
    for (int i : {0, 1}) {
      CHECK(s.knowledge[1][i].ranks == 0b00001);
      CHECK(s.knowledge[1][i].touched);
    }
    for (int i : {2, 3, 4}) {
      CHECK_FALSE(s.knowledge[1][i].RankPlausible(1));
      CHECK(s.knowledge[1][i].ranks == 0b11110);
      CHECK_FALSE(s.knowledge[1][i].touched);
    }
  }

  TEST_CASE("score rules") {
    HanabiState s;
    s.stacks = {5, 4, 1, 1, 3};
    CHECK(Score(s) == 14);
    s.lives = 0;
    CHECK(Score(s) == 0);
    s.lives = 1;
    s.stacks = {5, 5, 5, 5, 5};
    CHECK(Score(s) == 25);
  }

  TEST_CASE("next playable ranks") {
    HanabiState s;
    for (const auto& n : NextPlayable(s)) CHECK(n == 1);
    s.stacks = {5, 4, 1, 1, 3};
    const auto n = NextPlayable(s);
    CHECK_FALSE(n[0].has_value());
    CHECK(n[1] == 5);
    CHECK(n[4] == 4);
  }

  TEST_CASE("final round: one more turn each after the last draw") {
    auto s = Fixed({C(Color::kRed, 4), C(Color::kRed, 4)}, {C(Color::kBlue, 4), C(Color::kBlue, 4)},
                   {C(Color::kGreen, 2)});
    s.reveal_tokens = 3;
    ApplyMove(s, Move::Discard(0));  // draws the last card
    CHECK(s.deck.empty());
    CHECK(s.final_turns_remaining == 2);
    CHECK_FALSE(IsTerminal(s));
    ApplyMove(s, Move::Discard(0));
    CHECK_FALSE(IsTerminal(s));
    ApplyMove(s, Move::Discard(0));
    CHECK(IsTerminal(s));
  }

  TEST_CASE("terminal on lives exhausted and on all stacks complete") {
    auto s = Fixed({C(Color::kRed, 3)}, {C(Color::kBlue, 2)}, {C(Color::kWhite, 3)});
    s.lives = 1;
    ApplyMove(s, Move::Play(0));
    CHECK(IsTerminal(s));
    CHECK(Score(s) == 0);
    s = Fixed({C(Color::kBlue, 5)}, {C(Color::kBlue, 2)}, {C(Color::kWhite, 3)});
    s.stacks = {5, 5, 5, 5, 4};
    ApplyMove(s, Move::Play(0));
    CHECK(IsTerminal(s));
    CHECK(Score(s) == 25);
  }

  TEST_CASE("illegal labels are rejected") {
    auto s = Deal(Seed{1});
    CHECK_THROWS_AS(ApplyAction(s, ActionId{GameKind::kHanabi, 0, "Discard my Card 0"}), IllegalAction);
    CHECK_THROWS_AS(ApplyAction(s, ActionId{GameKind::kHanabi, 0, "Play my Card 9"}), IllegalAction);
  }

  TEST_CASE("random playouts keep conservation, bounds and knowledge soundness") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      auto s = Deal(Seed{seed});
      KnowledgeOracle oracle(s);
      Pcg32 rng(seed, 99);
      while (!IsTerminal(s)) {
        const auto moves = LegalMoves(s);
        const auto m = moves[rng.Bounded(static_cast<std::uint32_t>(moves.size()))];
        const auto before = s;
        ApplyMove(s, m);
        oracle.Observe(before, m, s);
        int stacked = 0;
        for (int top : s.stacks) stacked += top;
        REQUIRE(s.deck.size() + s.hands[0].size() + s.hands[1].size() + s.discard_pile.size() + stacked == 50);
        REQUIRE(s.reveal_tokens >= 0);
        REQUIRE(s.reveal_tokens <= kMaxTokens);
        REQUIRE(s.lives >= 0);
        REQUIRE(s.lives <= kMaxLives);
        oracle.Check(s);
      }
    }
  }
}
