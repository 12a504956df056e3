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

#include "coord_arena/qa.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "coord_arena/envs.h"
#include "coord_arena/errors.h"
#include "coord_arena/resources.h"
#include "coord_arena/text.h"

namespace coord_arena::qa {
namespace {

using nlohmann::json;

std::string_view TomKindName(TomKind k) {
  switch (k) {
    case TomKind::kPartnerIntent: return "partner-intent";
    case TomKind::kHanabiReveal: return "hanabi-reveal";
    case TomKind::kHanabiInfer: return "hanabi-infer";
  }
  return "";
}

TomKind ParseTomKind(std::string_view s) {
  if (s == "partner-intent") return TomKind::kPartnerIntent;
  if (s == "hanabi-reveal") return TomKind::kHanabiReveal;
  if (s == "hanabi-infer") return TomKind::kHanabiInfer;
  throw ConfigError("unknown tom_kind: " + std::string(s));
}

// Observation without the trailing action block.
std::string StateText(const GameEnv& env, int player, bool include_partner_info) {
  if (const auto* h = dynamic_cast<const HanabiEnv*>(&env)) {
    return text::HanabiObservation(h->state(), player, env.names());
  }
  if (const auto* k = dynamic_cast<const KitchenEnv*>(&env)) {
    return text::KitchenObservation(k->state(), player, env.names(), {include_partner_info});
  }
  if (const auto* p = dynamic_cast<const PursuitEnv*>(&env)) {
    return text::PursuitObservation(p->state(), player, env.names());
  }
  throw ConfigError("unsupported environment");
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kEC: return "EC";
    case Category::kToM: return "ToM";
    case Category::kJP: return "JP";
  }
  return "";
}

Category ParseCategory(std::string_view name) {
  if (name == "EC") return Category::kEC;
  if (name == "ToM") return Category::kToM;
  if (name == "JP") return Category::kJP;
  throw ConfigError("unknown QA category: " + std::string(name));
}

ScenarioRecord RecordFromJson(const json& j) {
  ScenarioRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.game = ParseGameKind(j.at("game").get<std::string>());
    r.state = j.at("state");
    r.player = j.value("player", 0);
    if (j.contains("names")) r.names = j["names"].get<PlayerNames>();
    r.include_partner_info = j.value("include_partner_info", true);
    r.context = j.value("context", std::string());
    const json questions = j.value("questions", json::object());
    for (const auto& [name, q] : questions.items()) {
      Question question;
      question.text = q.value("question", std::string());
      question.options = q.value("options", std::vector<std::string>{});
      question.gold = q.value("gold", std::string());
      if (q.contains("tom_kind")) question.tom_kind = ParseTomKind(q["tom_kind"].get<std::string>());
      r.questions[ParseCategory(name)] = std::move(question);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad scenario record: ") + e.what());
  }
  if (r.player < 0 || r.player > 1) throw ConfigError("scenario player must be 0 or 1");
  return r;
}

json RecordToJson(const ScenarioRecord& r) {
  json j;
  j["id"] = r.id;
  j["game"] = std::string(GameKindName(r.game));
  j["state"] = r.state;
  j["player"] = r.player;
  j["names"] = r.names;
  j["include_partner_info"] = r.include_partner_info;
  if (!r.context.empty()) j["context"] = r.context;
  j["questions"] = json::object();
  for (const auto& [cat, q] : r.questions) {
    json qj;
    if (!q.text.empty()) qj["question"] = q.text;
    if (!q.options.empty()) qj["options"] = q.options;
    qj["gold"] = q.gold;
    if (q.tom_kind) qj["tom_kind"] = std::string(TomKindName(*q.tom_kind));
    j["questions"][std::string(CategoryName(cat))] = qj;
  }
  return j;
}

std::vector<ScenarioRecord> LoadScenarios(std::string_view jsonl_text) {
  std::vector<ScenarioRecord> out;
  std::istringstream in{std::string(jsonl_text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      out.push_back(RecordFromJson(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw ConfigError("scenario line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ScenarioRecord> LoadScenarioFile(const std::string& path) { return LoadScenarios(ReadFile(path)); }

std::vector<ScenarioRecord> BundledScenarios() { return LoadScenarios(LoadResource("scenarios/pack.jsonl")); }

McqItem RenderMcq(const ScenarioRecord& rec, Category category) {
  auto it = rec.questions.find(category);
  if (it == rec.questions.end() || it->second.gold.empty()) {
    throw MissingGold("scenario " + rec.id + " has no " + std::string(CategoryName(category)) + " gold answer");
  }
  const Question& q = it->second;
  auto env = EnvFromSnapshot(rec.game, rec.state, rec.names, rec.include_partner_info);

  McqItem item;
  item.scenario_id = rec.id;
  item.category = category;
  item.game = rec.game;
  item.system_prompt = env->GameDescription(rec.player);
  std::string question = q.text;
  std::string header = "Available Answers:";
  item.options = q.options;

  switch (category) {
    case Category::kEC:
      if (question.empty()) throw ConfigError("EC question text is required (scenario " + rec.id + ")");
      break;
    case Category::kJP:
      if (question.empty()) question = "What action should I take next?";
      if (item.options.empty()) item.options = text::Labels(env->LegalActions(rec.player));
      header = "Available Actions:";
      break;
    case Category::kToM: {
      TomKind kind = q.tom_kind.value_or(rec.game == GameKind::kHanabi ? TomKind::kHanabiReveal
                                                                       : TomKind::kPartnerIntent);
      switch (kind) {
        case TomKind::kPartnerIntent:
          if (question.empty()) question = "What action does my partner intend to take?";
          if (item.options.empty()) item.options = text::Labels(env->LegalActions(1 - rec.player));
          header = "Available Actions:";
          break;
        case TomKind::kHanabiReveal:
          if (question.empty()) {
            question =
                "What information about his cards should I reveal to my partner so that he knows to play a card on "
                "his turn?";
          }
          if (item.options.empty()) {
            for (const auto& a : env->LegalActions(rec.player)) {
              if (a.label.rfind("Reveal", 0) == 0) item.options.push_back(a.label);
            }
          }
          break;
        case TomKind::kHanabiInfer: {
          if (question.empty()) question = "What can I infer from my partner's previous action?";
          if (item.options.empty()) {
            const auto* h = dynamic_cast<const HanabiEnv*>(env.get());
            if (!h) throw ConfigError("hanabi-infer needs a Hanabi scenario");
            const int n = static_cast<int>(h->state().hands[rec.player].size());
            for (int i = 0; i < n; ++i) item.options.push_back("I should Play Card " + std::to_string(i));
            for (int i = 0; i < n; ++i) item.options.push_back("I should Discard Card " + std::to_string(i));
          }
          break;
        }
      }
      break;
    }
  }
  if (item.options.size() < 2) throw ConfigError("scenario " + rec.id + " yields fewer than two options");
  if (item.options.size() > 26) throw ConfigError("scenario " + rec.id + " yields more than 26 options");
  auto g = std::find(item.options.begin(), item.options.end(), q.gold);
  if (g == item.options.end()) {
    throw MissingGold("gold '" + q.gold + "' is not an option of scenario " + rec.id + " " +
                      std::string(CategoryName(category)));
  }
  item.gold = static_cast<int>(g - item.options.begin());
  const std::string state = rec.context.empty() ? StateText(*env, rec.player, rec.include_partner_info) : rec.context;
  item.prompt = state + "\n\n" + question + "\n" + header + "\n" + text::LetteredList(item.options);
  return item;
}

std::vector<McqItem> RenderAll(const std::vector<ScenarioRecord>& recs) {
  std::vector<McqItem> out;
  for (const auto& r : recs) {
    for (Category c : kCategories) {
      if (r.questions.count(c)) out.push_back(RenderMcq(r, c));
    }
  }
  return out;
}

std::optional<int> ExtractAnswer(std::string_view response, const McqItem& item, const ParseOptions& opts) {
  const int n = static_cast<int>(item.options.size());
  if (response.find_first_not_of(" \t\r\n") == std::string_view::npos) return std::nullopt;
  if (auto idx = ExtractLetter(response, n)) return idx;
  std::string seg(response);
  for (std::string_view marker : {"Answer:", "answer:", "Action:", "action:"}) {
    const auto pos = std::string(response).rfind(marker);
    if (pos != std::string::npos) {
      seg = std::string(response.substr(pos + marker.size()));
      break;
    }
  }
  // Exact option text first, then the overlap score.
  const std::string norm = NormalizeText(seg);
  for (int i = 0; i < n; ++i) {
    if (NormalizeText(item.options[i]) == norm) return i;
  }
  return FuzzyMatch(seg, item.options, opts);
}

QaScore ScoreRun(const std::vector<McqItem>& items, const std::vector<std::vector<std::string>>& responses,
                 int trials) {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (responses.size() != items.size()) throw LengthMismatch("one response list per item required");
  for (const auto& r : responses) {
    if (static_cast<int>(r.size()) != trials) throw LengthMismatch("each item needs one response per trial");
  }
  QaScore score;
  score.trials = trials;
  std::map<Category, std::vector<int>> correct;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& cs = score.categories[items[i].category];
    auto& hits = correct[items[i].category];
    hits.resize(static_cast<std::size_t>(trials), 0);
    ++cs.items;
    cs.random_baseline += 1.0 / static_cast<double>(items[i].options.size());
    for (int t = 0; t < trials; ++t) {
      const auto ans = ExtractAnswer(responses[i][t], items[i]);
      if (!ans) {
        ++cs.unmatched;
      } else if (*ans == items[i].gold) {
        ++hits[t];
      }
    }
  }
  for (auto& [cat, cs] : score.categories) {
    cs.random_baseline /= cs.items;
    for (int t = 0; t < trials; ++t) {
      cs.per_trial.push_back(static_cast<double>(correct[cat][t]) / cs.items);
    }
    cs.mean = std::accumulate(cs.per_trial.begin(), cs.per_trial.end(), 0.0) / trials;
  }
  return score;
}

std::vector<double> AverageRanks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw LengthMismatch("correlation inputs differ in length");
  if (x.size() < 3) throw DegenerateInput("correlation needs at least three points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("correlation input has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Correlation Correlations(const std::vector<double>& x, const std::vector<double>& y) {
  Correlation c;
  c.pearson = Pearson(x, y);
  c.spearman = Pearson(AverageRanks(x), AverageRanks(y));
  return c;
}

std::vector<std::vector<std::string>> CollectResponses(const std::vector<McqItem>& items, Backend& backend,
                                                       int trials, int concurrency) {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  std::vector<std::vector<std::string>> out(items.size(), std::vector<std::string>(trials));
  const std::size_t total = items.size() * static_cast<std::size_t>(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t i = k / trials;
      const int t = static_cast<int>(k % trials);
      out[i][t] = backend.Complete({{"system", items[i].system_prompt}, {"user", items[i].prompt}}).text;
    }
  };
  std::vector<std::future<void>> workers;
  const int n = std::max(1, std::min<int>(concurrency, static_cast<int>(total)));
  for (int w = 0; w < n; ++w) workers.push_back(std::async(std::launch::async, worker));
  for (auto& f : workers) f.get();
  return out;
}

std::string ScoreCsv(const std::string& model, const QaScore& score) {
  std::ostringstream out;
  out << "model,category,trial,accuracy\n";
  for (const auto& [cat, cs] : score.categories) {
    for (std::size_t t = 0; t < cs.per_trial.size(); ++t) {
      out << CsvField(model) << ',' << CategoryName(cat) << ',' << (t + 1) << ',' << std::setprecision(17) << cs.per_trial[t]
          << '\n';
    }
  }
  return out.str();
}

}  // namespace coord_arena::qa
