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

#include "coord_arena/harness.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <sstream>

#include "coord_arena/errors.h"
#include "coord_arena/resources.h"
#include "coord_arena/scripted.h"
#include "json.hpp"

namespace coord_arena {
namespace {

using nlohmann::json;

constexpr int kNonKitchenStepCap = 1000;

const std::vector<std::string> kCsvColumns = {
    "game",      "layout", "agent_a", "agent_b",      "horizon",  "tom",   "verify",  "partner_info",
    "name_0",    "name_1", "orientation", "episode",  "seed",     "score", "turns",   "steps",
    "latency_mean", "latency_std", "fallbacks", "aborted", "abort_reason"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
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

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw IoFailure("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

json EpisodeJson(const EpisodeRecord& e) {
  return {{"type", "episode"},       {"orientation", e.orientation}, {"episode", e.episode},
          {"seed", e.seed},          {"score", e.score},             {"turns", e.turns},
          {"steps", e.steps},        {"latency_mean", e.latency_mean}, {"latency_std", e.latency_std},
          {"fallbacks", e.fallbacks}, {"aborted", e.aborted},         {"abort_reason", e.abort_reason}};
}

EpisodeRecord EpisodeFromJson(const json& j) {
  EpisodeRecord e;
  e.orientation = j.at("orientation");
  e.episode = j.at("episode");
  e.seed = j.at("seed");
  e.score = j.at("score");
  e.turns = j.at("turns");
  e.steps = j.at("steps");
  e.latency_mean = j.at("latency_mean");
  e.latency_std = j.at("latency_std");
  e.fallbacks = j.at("fallbacks");
  e.aborted = j.at("aborted");
  e.abort_reason = j.at("abort_reason");
  return e;
}

bool ParseBool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw IoFailure("bad boolean field: " + s);
}

}  // namespace

// ---------------------------------------------------------------- Agents

AgentSpec ParseAgentSpec(const std::string& spec) {
  AgentSpec s;
  s.text = spec;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "scripted") {
    if (rest.empty()) throw ConfigError("scripted spec needs a policy name");
    const auto names = ScriptedPolicyNames();
    if (std::find(names.begin(), names.end(), rest) == names.end()) {
      throw ConfigError("unknown scripted policy: " + rest);
    }
    s.kind = AgentSpec::Kind::kScripted;
    s.policy = rest;
  } else if (kind == "random") {
    s.kind = AgentSpec::Kind::kRandom;
    if (!rest.empty()) {
      try {
        std::size_t used = 0;
        s.seed = std::stoull(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(rest);
      } catch (const std::exception&) {
        throw ConfigError("bad random seed: " + rest);
      }
    }
  } else if (kind == "replay") {
    if (rest.empty()) throw ConfigError("replay spec needs a script path");
    s.kind = AgentSpec::Kind::kReplay;
    s.path = rest;
  } else if (kind == "http") {
    const auto at = rest.find('@');
    if (at == std::string::npos || at == 0 || at + 1 >= rest.size()) {
      throw ConfigError("http spec must look like http:<model>@<endpoint>");
    }
    s.kind = AgentSpec::Kind::kHttp;
    s.model = rest.substr(0, at);
    s.endpoint = rest.substr(at + 1);
  } else {
    throw ConfigError("unknown agent spec: " + spec);
  }
  return s;
}

std::shared_ptr<Backend> MakeBackend(const AgentSpec& spec) {
  if (spec.kind == AgentSpec::Kind::kReplay) return ReplayBackend::FromFile(spec.path);
  if (spec.kind == AgentSpec::Kind::kHttp) {
    HttpConfig hc;
    hc.endpoint = spec.endpoint;
    hc.model = spec.model;
    return std::make_shared<HttpChatBackend>(hc);
  }
  throw ConfigError("not a backend spec: " + spec.text);
}

std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const AblationFlags& flags) {
  switch (spec.kind) {
    case AgentSpec::Kind::kScripted:
      if (spec.policy == "random-legal") return std::make_unique<RandomAgent>(0);
      return std::make_unique<ScriptedAgent>(spec.policy);
    case AgentSpec::Kind::kRandom: return std::make_unique<RandomAgent>(spec.seed);
    case AgentSpec::Kind::kReplay:
    case AgentSpec::Kind::kHttp: {
      const auto backend = MakeBackend(spec);
      CacConfig cfg;
      cfg.planner = backend;
      if (flags.tom) cfg.tom = backend;
      if (flags.verify) cfg.verifier = backend;
      return std::make_unique<CacAgent>(cfg, spec.text);
    }
  }
  throw ConfigError("unknown agent kind");
}

// ---------------------------------------------------------------- Stats

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double SampleStd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

Stat MeanStdErr(const std::vector<double>& v) {
  Stat s;
  s.n = static_cast<int>(v.size());
  s.mean = Mean(v);
  s.spread = v.size() < 2 ? 0.0 : SampleStd(v) / std::sqrt(static_cast<double>(v.size()));
  return s;
}

std::vector<OrientationSummary> Summarize(const MatchupReport& report) {
  std::vector<OrientationSummary> out;
  for (const std::string orientation : {"A|B", "B|A"}) {
    OrientationSummary sum;
    sum.orientation = orientation;
    std::vector<double> scores, turns;
    // Pool per-episode latency moments into per-decision statistics.
    double n_total = 0.0, weighted = 0.0;
    for (const auto& e : report.episodes) {
      if (e.orientation != orientation) continue;
      scores.push_back(e.score);
      turns.push_back(e.turns);
      sum.aborted += e.aborted ? 1 : 0;
      sum.fallbacks += e.fallbacks;
      n_total += e.turns;
      weighted += e.turns * e.latency_mean;
    }
    if (scores.empty()) continue;
    sum.score = MeanStdErr(scores);
    sum.turns = MeanStdErr(turns);
    const double mean = n_total > 0 ? weighted / n_total : 0.0;
    double m2 = 0.0;
    for (const auto& e : report.episodes) {
      if (e.orientation != orientation) continue;
      m2 += e.turns * (e.latency_std * e.latency_std + (e.latency_mean - mean) * (e.latency_mean - mean));
    }
    sum.latency.mean = mean;
    sum.latency.n = static_cast<int>(n_total);
    sum.latency.spread = n_total > 1 ? std::sqrt(m2 / (n_total - 1)) : 0.0;
    out.push_back(sum);
  }
  return out;
}

// ---------------------------------------------------------------- Running

void MatchupConfig::Validate() const {
  if (episodes < 0) throw ConfigError("episodes must be nonnegative");
  if (!seeds.empty() && static_cast<int>(seeds.size()) != episodes) {
    throw ConfigError("explicit seed count must equal the episode count");
  }
  if (horizon < 0) throw ConfigError("horizon must be nonnegative");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  ParseAgentSpec(agent_a);
  ParseAgentSpec(agent_b);
  if (game != GameKind::kHanabi) {
    const std::string name = layout.empty() ? DefaultLayout(game) : layout;
    if (game == GameKind::kKitchen) {
      LoadKitchenLayout(name);
    } else {
      LoadRoomGraph(name);
    }
  }
}

std::vector<std::uint64_t> MatchupConfig::EpisodeSeeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (int i = 0; i < episodes; ++i) out.push_back(seed + static_cast<std::uint64_t>(i));
  return out;
}

EpisodeRecord RecordEpisode(const EpisodeResult& r, const std::string& orientation, int episode, std::uint64_t seed) {
  EpisodeRecord e;
  e.orientation = orientation;
  e.episode = episode;
  e.seed = seed;
  e.score = r.score;
  e.turns = r.turns;
  e.steps = r.steps;
  e.latency_mean = Mean(r.latencies);
  double m2 = 0.0;
  for (double x : r.latencies) m2 += (x - e.latency_mean) * (x - e.latency_mean);
  e.latency_std = r.latencies.empty() ? 0.0 : std::sqrt(m2 / static_cast<double>(r.latencies.size()));
  for (const auto& t : r.transcript) e.fallbacks += t.fallback ? 1 : 0;
  e.aborted = r.aborted;
  e.abort_reason = r.abort_reason;
  return e;
}

MatchupReport RunMatchup(const MatchupConfig& cfg) {
  cfg.Validate();
  MatchupReport report;
  report.game = std::string(GameKindName(cfg.game));
  report.layout = cfg.game == GameKind::kHanabi ? "" : (cfg.layout.empty() ? DefaultLayout(cfg.game) : cfg.layout);
  report.agent_a = cfg.agent_a;
  report.agent_b = cfg.agent_b;
  report.horizon = cfg.horizon;
  report.flags = cfg.flags;
  report.names = cfg.names;

  struct Job {
    std::string orientation;
    int episode;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  const auto seeds = cfg.EpisodeSeeds();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    jobs.push_back({"A|B", static_cast<int>(i), seeds[i]});
    if (cfg.swap_positions) jobs.push_back({"B|A", static_cast<int>(i), seeds[i]});
  }
  const AgentSpec spec_a = ParseAgentSpec(cfg.agent_a);
  const AgentSpec spec_b = ParseAgentSpec(cfg.agent_b);

  auto run = [&](const Job& job) {
    EnvConfig ec;
    ec.game = cfg.game;
    ec.layout = report.layout;
    ec.seed = Seed{job.seed};
    ec.names = cfg.names;
    ec.include_partner_info = cfg.flags.include_partner_info;
    ec.horizon = cfg.horizon;
    auto env = MakeEnv(ec);
    auto a = MakeAgent(spec_a, cfg.flags);
    auto b = MakeAgent(spec_b, cfg.flags);
    std::array<Agent*, 2> seats = job.orientation == "A|B" ? std::array<Agent*, 2>{a.get(), b.get()}
                                                           : std::array<Agent*, 2>{b.get(), a.get()};
    const int cap = cfg.game == GameKind::kKitchen ? cfg.horizon : kNonKitchenStepCap;
    const auto result = RunEpisode(*env, seats, cap, Seed{job.seed});
    return RecordEpisode(result, job.orientation, job.episode, job.seed);
  };

  report.episodes.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < jobs.size(); k = next++) report.episodes[k] = run(jobs[k]);
  };
  const int n = std::max(1, std::min<int>(cfg.workers, static_cast<int>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::future<void>> futures;
    for (int w = 0; w < n; ++w) futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }
  return report;
}

std::string ReportText(const MatchupReport& report) {
  std::ostringstream out;
  out << "game " << report.game;
  if (!report.layout.empty()) out << " (" << report.layout << ")";
  out << "\nA = " << report.agent_a << "\nB = " << report.agent_b << "\n";
  char line[256];
  for (const auto& s : Summarize(report)) {
    std::snprintf(line, sizeof(line),
                  "%s  score %.2f ± %.2f  turns %.1f ± %.1f  latency (seconds) %.2f ± %.2f  episodes %d",
                  s.orientation.c_str(), s.score.mean, s.score.spread, s.turns.mean, s.turns.spread, s.latency.mean,
                  s.latency.spread, s.score.n);
    out << line;
    if (s.aborted) out << "  aborted " << s.aborted;
    if (s.fallbacks) out << "  fallbacks " << s.fallbacks;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- Export

std::string ExportCsv(const MatchupReport& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
  out << "\n";
  for (const auto& e : r.episodes) {
    const std::vector<std::string> row = {
        r.game, r.layout, r.agent_a, r.agent_b, std::to_string(r.horizon),
        r.flags.tom ? "true" : "false", r.flags.verify ? "true" : "false",
        r.flags.include_partner_info ? "true" : "false", r.names[0], r.names[1], e.orientation,
        std::to_string(e.episode), std::to_string(e.seed), std::to_string(e.score), std::to_string(e.turns),
        std::to_string(e.steps), Num(e.latency_mean), Num(e.latency_std), std::to_string(e.fallbacks),
        e.aborted ? "true" : "false", e.abort_reason};
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << CsvField(row[i]);
    out << "\n";
  }
  return out.str();
}

MatchupReport ImportCsv(const std::string& text) {
  const auto rows = ParseCsv(text);
  if (rows.empty() || rows[0] != kCsvColumns) throw IoFailure("CSV header does not match the report schema");
  MatchupReport r;
  try {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& f = rows[i];
      if (f.size() != kCsvColumns.size()) throw IoFailure("CSV row " + std::to_string(i) + " has wrong width");
      if (i == 1) {
        r.game = f[0];
        r.layout = f[1];
        r.agent_a = f[2];
        r.agent_b = f[3];
        r.horizon = std::stoi(f[4]);
        r.flags = {ParseBool(f[5]), ParseBool(f[6]), ParseBool(f[7])};
        r.names = {f[8], f[9]};
      }
      EpisodeRecord e;
      e.orientation = f[10];
      e.episode = std::stoi(f[11]);
      e.seed = std::stoull(f[12]);
      e.score = std::stoi(f[13]);
      e.turns = std::stoi(f[14]);
      e.steps = std::stoi(f[15]);
      e.latency_mean = std::stod(f[16]);
      e.latency_std = std::stod(f[17]);
      e.fallbacks = std::stoi(f[18]);
      e.aborted = ParseBool(f[19]);
      e.abort_reason = f[20];
      r.episodes.push_back(std::move(e));
    }
  } catch (const std::invalid_argument& e) {
    throw IoFailure(std::string("bad CSV number: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw IoFailure(std::string("CSV number out of range: ") + e.what());
  }
  return r;
}

std::string ExportJsonl(const MatchupReport& r) {
  json head = {{"type", "matchup"},  {"version", 1},          {"game", r.game},
               {"layout", r.layout}, {"agent_a", r.agent_a},  {"agent_b", r.agent_b},
               {"horizon", r.horizon}, {"tom", r.flags.tom}, {"verify", r.flags.verify},
               {"partner_info", r.flags.include_partner_info}, {"names", r.names}};
  json summary = json::array();
  for (const auto& s : Summarize(r)) {
    summary.push_back({{"orientation", s.orientation},
                       {"score_mean", s.score.mean},
                       {"score_stderr", s.score.spread},
                       {"turns_mean", s.turns.mean},
                       {"turns_stderr", s.turns.spread},
                       {"latency_mean", s.latency.mean},
                       {"latency_std", s.latency.spread},
                       {"episodes", s.score.n},
                       {"aborted", s.aborted},
                       {"fallbacks", s.fallbacks}});
  }
  head["summary"] = summary;
  std::string out = head.dump() + "\n";
  for (const auto& e : r.episodes) out += EpisodeJson(e).dump() + "\n";
  return out;
}

MatchupReport ImportJsonl(const std::string& text) {
  MatchupReport r;
  std::istringstream in(text);
  std::string line;
  bool have_head = false;
  try {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto j = json::parse(line);
      const std::string type = j.at("type");
      if (type == "matchup") {
        r.game = j.at("game");
        r.layout = j.at("layout");
        r.agent_a = j.at("agent_a");
        r.agent_b = j.at("agent_b");
        r.horizon = j.at("horizon");
        r.flags = {j.at("tom").get<bool>(), j.at("verify").get<bool>(), j.at("partner_info").get<bool>()};
        r.names = j.at("names").get<PlayerNames>();
        have_head = true;
      } else if (type == "episode") {
        r.episodes.push_back(EpisodeFromJson(j));
      }
    }
  } catch (const json::exception& e) {
    throw IoFailure(std::string("bad report record: ") + e.what());
  }
  if (!have_head) throw IoFailure("report has no matchup record");
  return r;
}

void ExportReport(const MatchupReport& report, const std::string& path) {
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  WriteFile(path, csv ? ExportCsv(report) : ExportJsonl(report));
}

MatchupReport ImportReport(const std::string& path) {
  const std::string text = ReadFile(path);
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  return csv ? ImportCsv(text) : ImportJsonl(text);
}

}  // namespace coord_arena
