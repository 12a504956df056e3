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

#ifndef COORD_ARENA_HARNESS_H_
#define COORD_ARENA_HARNESS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "coord_arena/backends.h"
#include "coord_arena/cac_agent.h"
#include "coord_arena/envs.h"
#include "coord_arena/game.h"

namespace coord_arena {

// Backend spec strings:
//   scripted:<policy>        e.g. scripted:rule-hanabi, scripted:random-legal
//   random[:<seed>]          uniform legal choice
//   replay:<file>            CAC agent whose completions come from a script
//   http:<model>@<endpoint>  CAC agent backed by a chat-completion server
struct AgentSpec {
  enum class Kind { kScripted, kRandom, kReplay, kHttp };
  Kind kind = Kind::kScripted;
  std::string policy;
  std::uint64_t seed = 0;
  std::string path;
  std::string model;
  std::string endpoint;
  std::string text;  // original spec string
};

AgentSpec ParseAgentSpec(const std::string& spec);

struct AblationFlags {
  bool tom = true;
  bool verify = true;
  bool include_partner_info = true;
};

// Backend for replay:/http: specs; ConfigError otherwise.
std::shared_ptr<Backend> MakeBackend(const AgentSpec& spec);

std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const AblationFlags& flags);

struct MatchupConfig {
  GameKind game = GameKind::kHanabi;
  std::string layout;  // empty: game default
  std::string agent_a = "scripted:rule-hanabi";
  std::string agent_b = "scripted:rule-hanabi";
  int episodes = 3;
  std::uint64_t seed = 0;             // first seed when `seeds` is empty
  std::vector<std::uint64_t> seeds;   // explicit; size must equal episodes
  int horizon = kDefaultKitchenHorizon;
  bool swap_positions = false;
  AblationFlags flags;
  PlayerNames names = DefaultNames();
  int workers = 1;

  void Validate() const;
  std::vector<std::uint64_t> EpisodeSeeds() const;
};

struct EpisodeRecord {
  std::string orientation;  // "A|B": agent A in seat 0; "B|A": swapped
  int episode = 0;
  std::uint64_t seed = 0;
  int score = 0;
  int turns = 0;
  int steps = 0;
  double latency_mean = 0.0;
  double latency_std = 0.0;  // population std over this episode's decisions
  int fallbacks = 0;
  bool aborted = false;
  std::string abort_reason;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

struct MatchupReport {
  std::string game;
  std::string layout;
  std::string agent_a;
  std::string agent_b;
  int horizon = 0;
  AblationFlags flags;
  PlayerNames names = DefaultNames();
  std::vector<EpisodeRecord> episodes;

  friend bool operator==(const MatchupReport& a, const MatchupReport& b) {
    return a.game == b.game && a.layout == b.layout && a.agent_a == b.agent_a && a.agent_b == b.agent_b &&
           a.horizon == b.horizon && a.flags.tom == b.flags.tom && a.flags.verify == b.flags.verify &&
           a.flags.include_partner_info == b.flags.include_partner_info && a.names == b.names &&
           a.episodes == b.episodes;
  }
};

struct Stat {
  double mean = 0.0;
  double spread = 0.0;  // standard error or standard deviation, per use
  int n = 0;
};

double Mean(const std::vector<double>& v);
double SampleStd(const std::vector<double>& v);
// Sample mean with standard error s / sqrt(n).
Stat MeanStdErr(const std::vector<double>& v);

struct OrientationSummary {
  std::string orientation;
  Stat score;        // mean ± standard error
  Stat turns;        // mean ± standard error
  Stat latency;      // per-decision mean ± standard deviation
  int aborted = 0;
  int fallbacks = 0;
};

std::vector<OrientationSummary> Summarize(const MatchupReport& report);

MatchupReport RunMatchup(const MatchupConfig& config);
EpisodeRecord RecordEpisode(const EpisodeResult& result, const std::string& orientation, int episode,
                            std::uint64_t seed);

std::string ReportText(const MatchupReport& report);

std::string ExportCsv(const MatchupReport& report);
std::string ExportJsonl(const MatchupReport& report);
MatchupReport ImportCsv(const std::string& text);
MatchupReport ImportJsonl(const std::string& text);

// Format chosen from the extension: .csv, otherwise structured records.
void ExportReport(const MatchupReport& report, const std::string& path);
MatchupReport ImportReport(const std::string& path);

}  // namespace coord_arena

#endif  // COORD_ARENA_HARNESS_H_
