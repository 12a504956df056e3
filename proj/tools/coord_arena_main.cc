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

// coord_arena command-line driver: play, qa, serve, describe.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "coord_arena/backends.h"
#include "coord_arena/envs.h"
#include "coord_arena/errors.h"
#include "coord_arena/harness.h"
#include "coord_arena/qa.h"
#include "coord_arena/resources.h"
#include "coord_arena/service.h"
#include "coord_arena/text.h"
#include "httplib.h"

namespace ca = coord_arena;

namespace {

httplib::Server* g_server = nullptr;

void OnSignal(int) {
  if (g_server) g_server->stop();
}

struct CommonOptions {
  std::string game = "hanabi";
  std::string layout;
  std::uint64_t seed = 0;
  std::string name_0 = "Alice";
  std::string name_1 = "Bob";
};

void AddCommon(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--game", o.game, "hanabi | kitchen | capture | escape")->capture_default_str();
  cmd->add_option("--layout", o.layout, "kitchen layout or pursuit map (name or file path)");
  cmd->add_option("--seed", o.seed, "base seed")->capture_default_str();
  cmd->add_option("--name-0", o.name_0, "seat 0 player name")->capture_default_str();
  cmd->add_option("--name-1", o.name_1, "seat 1 player name")->capture_default_str();
}

int RunPlay(const CommonOptions& common, ca::MatchupConfig cfg, const std::string& out, bool quiet) {
  cfg.game = ca::ParseGameKind(common.game);
  cfg.layout = common.layout;
  cfg.seed = common.seed;
  cfg.names = {common.name_0, common.name_1};
  const auto report = ca::RunMatchup(cfg);
  if (!quiet) std::cout << ca::ReportText(report);
  if (!out.empty()) ca::ExportReport(report, out);
  return 0;
}

int RunQa(const std::string& scenarios, const std::string& backend_spec, const std::string& model, int trials,
          int concurrency, const std::string& out, bool dump) {
  const auto recs = scenarios.empty() ? ca::qa::BundledScenarios() : ca::qa::LoadScenarioFile(scenarios);
  const auto items = ca::qa::RenderAll(recs);
  if (dump) {
    for (const auto& item : items) {
      std::cout << "### " << item.scenario_id << " [" << ca::qa::CategoryName(item.category) << "] gold "
                << item.gold_letter() << "\n"
                << item.prompt << "\n\n";
    }
    return 0;
  }
  if (backend_spec.empty()) throw ca::ConfigError("--backend is required unless --dump is given");
  auto backend = ca::MakeBackend(ca::ParseAgentSpec(backend_spec));
  const auto responses = ca::qa::CollectResponses(items, *backend, trials, concurrency);
  const auto score = ca::qa::ScoreRun(items, responses, trials);
  const std::string label = model.empty() ? backend_spec : model;
  for (const auto& [cat, cs] : score.categories) {
    std::printf("%-4s accuracy %.3f  items %d  unmatched %d  random %.3f\n",
                std::string(ca::qa::CategoryName(cat)).c_str(), cs.mean, cs.items, cs.unmatched, cs.random_baseline);
  }
  if (!out.empty()) ca::WriteFile(out, ca::qa::ScoreCsv(label, score));
  return 0;
}

int RunServe(const std::string& host, int port) {
  ca::service::SessionManager manager;
  httplib::Server server;
  ca::service::Mount(server, manager);
  g_server = &server;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  std::cerr << "serving on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  g_server = nullptr;
  manager.Shutdown();
  return 0;
}

int RunDescribe(const CommonOptions& common, int seat, int horizon, bool as_json, bool rules) {
  ca::EnvConfig ec;
  ec.game = ca::ParseGameKind(common.game);
  ec.layout = common.layout;
  ec.seed = ca::Seed{common.seed};
  ec.names = {common.name_0, common.name_1};
  ec.horizon = horizon;
  const auto env = ca::MakeEnv(ec);
  if (as_json) {
    std::cout << ca::SeatView(*env, seat).dump(2) << "\n";
    return 0;
  }
  if (rules) std::cout << env->GameDescription(seat) << "\n\n";
  std::cout << env->Observation(seat) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordination arena: Hanabi, kitchen and pursuit games for LLM agents"};
  app.set_config("--config", "", "key = value config file; flags override it");
  app.require_subcommand(1);

  CommonOptions common;
  ca::MatchupConfig cfg;
  std::string out;
  bool quiet = false;
  bool no_tom = false, no_verify = false, omit_partner = false;
  auto* play = app.add_subcommand("play", "run a matchup between two agents");
  AddCommon(play, common);
  play->add_option("--agent-a", cfg.agent_a, "agent spec: scripted:<policy> | random[:seed] | replay:<file> | "
                                             "http:<model>@<endpoint>")
      ->capture_default_str();
  play->add_option("--agent-b", cfg.agent_b, "agent spec for the partner")->capture_default_str();
  play->add_option("--episodes", cfg.episodes, "episodes per orientation")->capture_default_str();
  play->add_option("--horizon", cfg.horizon, "kitchen episode length in ticks")->capture_default_str();
  play->add_option("--workers", cfg.workers, "parallel episodes")->capture_default_str();
  play->add_flag("--swap-positions", cfg.swap_positions, "also play with seats swapped");
  play->add_flag("--no-tom", no_tom, "disable the partner-modelling call");
  play->add_flag("--no-verify", no_verify, "disable the self-verification call");
  play->add_flag("--omit-partner-info", omit_partner, "drop partner state from kitchen observations");
  play->add_option("--out", out, "write episode records (.csv or .jsonl)");
  play->add_flag("--quiet", quiet, "suppress the summary");

  std::string scenarios, backend, model, qa_out;
  int trials = 3, concurrency = 4;
  bool dump = false;
  auto* qa = app.add_subcommand("qa", "multiple-choice coordination evaluation");
  qa->add_option("--scenarios", scenarios, "scenario JSONL file (default: bundled pack)");
  qa->add_option("--backend", backend, "replay:<file> | http:<model>@<endpoint>");
  qa->add_option("--model", model, "model label for the CSV");
  qa->add_option("--trials", trials, "repetitions per item")->capture_default_str();
  qa->add_option("--concurrency", concurrency, "parallel requests")->capture_default_str();
  qa->add_option("--out", qa_out, "write per-trial accuracy CSV");
  qa->add_flag("--dump", dump, "print rendered questions and exit");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "run the live play service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();

  CommonOptions dcommon;
  int seat = 0, dhorizon = ca::kDefaultKitchenHorizon;
  bool as_json = false, rules = false;
  auto* describe = app.add_subcommand("describe", "print the initial observation for a seed");
  AddCommon(describe, dcommon);
  describe->add_option("--seat", seat, "seat to describe (0 or 1)")->capture_default_str();
  describe->add_option("--horizon", dhorizon, "kitchen episode length in ticks")->capture_default_str();
  describe->add_flag("--json", as_json, "print the seat view document");
  describe->add_flag("--rules", rules, "include the game description");

  CLI11_PARSE(app, argc, argv);

  ca::SetCallLog([](const std::string& line) { std::cerr << line << "\n"; });
  try {
    if (*play) {
      cfg.flags.tom = !no_tom;
      cfg.flags.verify = !no_verify;
      cfg.flags.include_partner_info = !omit_partner;
      return RunPlay(common, cfg, out, quiet);
    }
    if (*qa) return RunQa(scenarios, backend, model, trials, concurrency, qa_out, dump);
    if (*serve) return RunServe(host, port);
    if (*describe) return RunDescribe(dcommon, seat, dhorizon, as_json, rules);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
