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

#ifndef COORD_ARENA_CAC_AGENT_H_
#define COORD_ARENA_CAC_AGENT_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coord_arena/backends.h"
#include "coord_arena/game.h"

namespace coord_arena {

struct ParseOptions {
  double threshold = 0.6;  // minimum token-overlap score
  double margin = 0.1;     // required lead over the runner-up
};

// Lowercased alphanumeric tokens joined by single spaces.
std::string NormalizeText(std::string_view text);
std::vector<std::string> Tokenize(std::string_view text);
// Dice coefficient over token sets.
double TokenOverlap(std::string_view a, std::string_view b);

// Index of the unique option that scores >= threshold with the required margin.
std::optional<int> FuzzyMatch(std::string_view text, std::span<const std::string> options,
                              const ParseOptions& opts = {});
// Option letter explicitly named in `text` ("B.", "(B)", "Answer: B", bare "B").
std::optional<int> ExtractLetter(std::string_view text, int num_options);
// Text after the last "Action:" marker, or the whole response.
std::string ActionSegment(std::string_view response);

// Grounds a free-text reply to a member of `legal`; throws ParseFailure.
ActionId ParseAction(std::string_view response, std::span<const ActionId> legal, bool lettered,
                     const ParseOptions& opts = {});

struct ToMNotes {
  std::string explanation;
  std::string clue_suggestion;
  std::string raw;
  bool well_formed = false;
  std::string AsText() const;
};

ToMNotes ParseTomReply(std::string_view reply);

enum class Verdict { kOkay, kNotOkay };
Verdict ParseVerdict(std::string_view reply);

struct BackendCall {
  std::string role;  // planner, tom or verifier
  std::vector<ChatMessage> messages;
  std::string response;
  double latency_seconds = 0.0;
  std::string note;  // parsed label, verdict, or parse error
};

struct DecisionTrace {
  std::vector<BackendCall> calls;
  std::optional<ToMNotes> tom;
  std::vector<std::string> rejected;  // labels the verifier refused
  int parse_failures = 0;
  bool fallback = false;
  std::string fallback_reason;
  std::string chosen;

  int Count(std::string_view role) const;
};

enum class FallbackRule { kSafest, kFirstLegal };

struct CacConfig {
  std::shared_ptr<Backend> planner;
  std::shared_ptr<Backend> tom;       // optional
  std::shared_ptr<Backend> verifier;  // optional
  int max_verify_retries = 3;
  int max_parse_attempts = 2;  // initial ask plus re-asks
  FallbackRule fallback_rule = FallbackRule::kSafest;
  ParseOptions parse;

  void Validate() const;
};

struct AgentContext {
  std::string long_term;
  std::string working;
  std::vector<std::string> episodic;
};

class CacAgent final : public Agent {
 public:
  explicit CacAgent(CacConfig config, std::string name = "cac");

  void BeginEpisode(Seed seed, int player) override;
  Decision Decide(const GameEnv& env, int player, std::span<const ActionId> legal,
                  const std::optional<ActionId>& partner_last) override;
  std::string Name() const override { return name_; }

  const AgentContext& context() const { return context_; }
  const CacConfig& config() const { return config_; }

 private:
  ToMNotes TomInfer(const GameEnv& env, int player, const std::string& partner_action, const std::string& obs,
                    DecisionTrace& trace);
  Verdict Verify(const std::string& action, const std::string& obs, DecisionTrace& trace);

  CacConfig config_;
  std::string name_;
  AgentContext context_;
};

}  // namespace coord_arena

#endif  // COORD_ARENA_CAC_AGENT_H_
