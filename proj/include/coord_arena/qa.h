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

#ifndef COORD_ARENA_QA_H_
#define COORD_ARENA_QA_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coord_arena/backends.h"
#include "coord_arena/cac_agent.h"
#include "coord_arena/game.h"
#include "json.hpp"

namespace coord_arena::qa {

enum class Category { kEC, kToM, kJP };
inline constexpr Category kCategories[] = {Category::kEC, Category::kToM, Category::kJP};

std::string_view CategoryName(Category c);  // "EC", "ToM", "JP"
Category ParseCategory(std::string_view name);

// How ToM options are produced when a question does not list them.
//   partner-intent  the partner's legal actions (non-Hanabi games)
//   hanabi-reveal   my legal reveal actions
//   hanabi-infer    "I should Play/Discard Card i" for each card I hold
enum class TomKind { kPartnerIntent, kHanabiReveal, kHanabiInfer };

struct Question {
  std::string text;                  // empty: category default
  std::vector<std::string> options;  // empty: generated from the state
  std::string gold;                  // label of the correct option
  std::optional<TomKind> tom_kind;
};

struct ScenarioRecord {
  std::string id;
  GameKind game = GameKind::kHanabi;
  nlohmann::json state;  // engine snapshot (see envs.h)
  int player = 0;
  PlayerNames names = DefaultNames();
  bool include_partner_info = true;
  std::string context;  // optional authored text replacing the state text
  std::map<Category, Question> questions;
};

ScenarioRecord RecordFromJson(const nlohmann::json& j);
nlohmann::json RecordToJson(const ScenarioRecord& rec);
// One JSON object per line; blank lines and lines starting with '#' skipped.
std::vector<ScenarioRecord> LoadScenarios(std::string_view jsonl_text);
std::vector<ScenarioRecord> LoadScenarioFile(const std::string& path);
std::vector<ScenarioRecord> BundledScenarios();

struct McqItem {
  std::string scenario_id;
  Category category = Category::kEC;
  GameKind game = GameKind::kHanabi;
  std::string system_prompt;
  std::string prompt;
  std::vector<std::string> options;
  int gold = 0;  // option index; letter is 'A' + gold

  char gold_letter() const { return static_cast<char>('A' + gold); }
};

McqItem RenderMcq(const ScenarioRecord& rec, Category category);
std::vector<McqItem> RenderAll(const std::vector<ScenarioRecord>& recs);

// Option index, or nullopt when Unmatched.
std::optional<int> ExtractAnswer(std::string_view response, const McqItem& item, const ParseOptions& opts = {});

struct CategoryScore {
  std::vector<double> per_trial;  // accuracy per trial
  double mean = 0.0;
  int items = 0;
  int unmatched = 0;             // over all trials
  double random_baseline = 0.0;  // mean of 1/|options|
};

struct QaScore {
  std::map<Category, CategoryScore> categories;
  int trials = 0;
};

// responses[i][t] is the reply to items[i] in trial t.
QaScore ScoreRun(const std::vector<McqItem>& items, const std::vector<std::vector<std::string>>& responses, int trials);

struct Correlation {
  double pearson = 0.0;
  double spearman = 0.0;
};

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> AverageRanks(const std::vector<double>& v);
double Pearson(const std::vector<double>& x, const std::vector<double>& y);
Correlation Correlations(const std::vector<double>& x, const std::vector<double>& y);

// Queries `backend` for every item and trial with at most `concurrency`
// calls in flight.
std::vector<std::vector<std::string>> CollectResponses(const std::vector<McqItem>& items, Backend& backend,
                                                       int trials, int concurrency = 4);

// Rows (model, category, trial, accuracy), trials numbered from 1.
std::string ScoreCsv(const std::string& model, const QaScore& score);

}  // namespace coord_arena::qa

#endif  // COORD_ARENA_QA_H_
