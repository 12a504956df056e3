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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "coord_arena/errors.h"
#include "coord_arena/hanabi.h"
#include "coord_arena/harness.h"
#include "doctest.h"

using namespace coord_arena;

namespace {

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("coord_arena_harness_" + name);
}

// Score from always playing the leftmost card, simulated directly on the engine.
int AlwaysPlayFirstScore(std::uint64_t seed) {
  auto s = hanabi::Deal(Seed{seed});
  while (!hanabi::IsTerminal(s)) {
    hanabi::ApplyMove(s, hanabi::Move::Play(0));
  }
  return hanabi::Score(s);
}

MatchupReport SampleReport() {
  MatchupConfig cfg;
  cfg.game = GameKind::kKitchen;
  cfg.layout = "cramped_room";
  cfg.agent_a = "scripted:greedy-kitchen";
  cfg.agent_b = "scripted:greedy-kitchen";
  cfg.episodes = 2;
  cfg.horizon = 60;
  cfg.swap_positions = true;
  cfg.names = {"Zoë", "Bob, Jr. \"B\""};
  return RunMatchup(cfg);
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("agent specs") {
    CHECK(ParseAgentSpec("scripted:rule-hanabi").policy == "rule-hanabi");
    CHECK(ParseAgentSpec("random:17").seed == 17);
    CHECK(ParseAgentSpec("random").kind == AgentSpec::Kind::kRandom);
    const auto h = ParseAgentSpec("http:gpt-x@http://localhost:9/v1");
    CHECK(h.model == "gpt-x");
    CHECK(h.endpoint == "http://localhost:9/v1");
    CHECK(ParseAgentSpec("replay:foo.txt").path == "foo.txt");
    for (const char* bad : {"", "bogus", "scripted:", "scripted:nope", "random:x1", "replay:", "http:m",
                            "http:@e", "http:m@"}) {
      CHECK_THROWS_AS(ParseAgentSpec(bad), ConfigError);
    }
    CHECK_THROWS_AS(MakeBackend(ParseAgentSpec("scripted:rule-hanabi")), ConfigError);
  }

  TEST_CASE("matchup config validation") {
    MatchupConfig cfg;
    cfg.episodes = -1;
    CHECK_THROWS_AS(cfg.Validate(), ConfigError);
    cfg.episodes = 2;
    cfg.seeds = {1};
    CHECK_THROWS_AS(cfg.Validate(), ConfigError);
    cfg.seeds = {};
    cfg.seed = 10;
    CHECK(cfg.EpisodeSeeds() == std::vector<std::uint64_t>{10, 11});
    cfg.game = GameKind::kKitchen;
    cfg.layout = "no_such_layout";
    CHECK_THROWS(cfg.Validate());
  }

  TEST_CASE("greedy kitchen over three seeds, both orientations") {
    MatchupConfig cfg;
    cfg.game = GameKind::kKitchen;
    cfg.agent_a = "scripted:greedy-kitchen";
    cfg.agent_b = "scripted:greedy-kitchen";
    cfg.episodes = 3;
    cfg.horizon = 120;
    cfg.swap_positions = true;
    const auto rep = RunMatchup(cfg);
    REQUIRE(rep.episodes.size() == 6);
    int ab = 0, ba = 0;
    for (const auto& e : rep.episodes) {
      CHECK(e.score % 20 == 0);
      CHECK(e.score > 0);
      CHECK(e.steps == 120);
      CHECK_FALSE(e.aborted);
      (e.orientation == "A|B" ? ab : ba)++;
    }
    CHECK(ab == 3);
    CHECK(ba == 3);
    const auto sum = Summarize(rep);
    REQUIRE(sum.size() == 2);
    CHECK(sum[0].orientation == "A|B");
    CHECK(sum[0].score.n == 3);
  }

  TEST_CASE("replay-scripted hanabi reproduces an engine-simulated score") {
    const auto path = TempPath("play0.txt");
    {
      std::ofstream out(path);
      for (int i = 0; i < 400; ++i) out << "Action: Play my Card 0\n";
    }
    MatchupConfig cfg;
    cfg.game = GameKind::kHanabi;
    cfg.agent_a = "replay:" + path.string();
    cfg.agent_b = "replay:" + path.string();
    cfg.flags.tom = false;
    cfg.flags.verify = false;
    cfg.episodes = 3;
    cfg.seeds = {5, 5, 5};
    const auto rep = RunMatchup(cfg);
    const int expected = AlwaysPlayFirstScore(5);
    for (const auto& e : rep.episodes) {
      CHECK(e.score == expected);
      CHECK(e.fallbacks == 0);
      CHECK(e.latency_mean == 0.0);
    }
    const auto sum = Summarize(rep);
    CHECK(sum[0].score.mean == doctest::Approx(expected));
    CHECK(sum[0].score.spread == 0.0);
    CHECK(ReportText(rep).find("± 0.00") != std::string::npos);
    std::filesystem::remove(path);
  }

  TEST_CASE("mean and standard error against direct formulas") {
    const std::vector<double> v = {3, 7, 8, 10, 2};
    double m = 0;
    for (double x : v) m += x;
    m /= 5;
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    const double sd = std::sqrt(ss / 4);
    const auto s = MeanStdErr(v);
    CHECK(s.mean == doctest::Approx(m));
    CHECK(s.spread == doctest::Approx(sd / std::sqrt(5.0)));
    CHECK(SampleStd(v) == doctest::Approx(sd));
    CHECK(MeanStdErr({4}).spread == 0.0);
  }

  TEST_CASE("csv and jsonl round trips, including unicode and quoting") {
    const auto rep = SampleReport();
    const auto csv = ExportCsv(rep);
    CHECK(csv.rfind(
              "game,layout,agent_a,agent_b,horizon,tom,verify,partner_info,name_0,name_1,orientation,episode,seed,"
              "score,turns,steps,latency_mean,latency_std,fallbacks,aborted,abort_reason\n",
              0) == 0);
    CHECK(ImportCsv(csv) == rep);
    CHECK(ImportJsonl(ExportJsonl(rep)) == rep);
    const auto p = TempPath("rt.jsonl");
    ExportReport(rep, p.string());
    CHECK(ImportReport(p.string()) == rep);
    std::filesystem::remove(p);
    CHECK_THROWS_AS(ImportCsv("nope\n1\n"), IoFailure);
    CHECK_THROWS_AS(ImportReport(TempPath("missing.csv").string()), IoFailure);
  }

  TEST_CASE("exports are byte-identical across runs and worker counts") {
    MatchupConfig cfg;
    cfg.game = GameKind::kHanabi;
    cfg.agent_a = "scripted:rule-hanabi";
    cfg.agent_b = "random:3";
    cfg.episodes = 4;
    cfg.swap_positions = true;
    const auto a = RunMatchup(cfg);
    cfg.workers = 3;
    const auto b = RunMatchup(cfg);
    CHECK(ExportCsv(a) == ExportCsv(b));
    CHECK(ExportJsonl(a) == ExportJsonl(b));
  }
}
