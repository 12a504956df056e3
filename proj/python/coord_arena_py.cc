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

// Python bindings. Structured values cross the boundary as JSON text; the
// coord_arena package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "coord_arena/cac_agent.h"
#include "coord_arena/envs.h"
#include "coord_arena/errors.h"
#include "coord_arena/harness.h"
#include "coord_arena/qa.h"
#include "json.hpp"

namespace py = pybind11;
using namespace coord_arena;
using nlohmann::json;

namespace {

PlayerNames Names(const std::vector<std::string>& v) {
  if (v.empty()) return DefaultNames();
  if (v.size() != 2) throw ConfigError("names needs exactly two entries");
  return {v[0], v[1]};
}

class PyEnv {
 public:
  PyEnv(const std::string& game, const std::string& layout, std::uint64_t seed, int horizon,
        const std::vector<std::string>& names, bool include_partner_info) {
    EnvConfig ec;
    ec.game = ParseGameKind(game);
    ec.layout = layout;
    ec.seed = Seed{seed};
    ec.horizon = horizon;
    ec.names = Names(names);
    ec.include_partner_info = include_partner_info;
    env_ = MakeEnv(ec);
  }

  std::string game() const { return std::string(GameKindName(env_->kind())); }
  bool terminal() const { return env_->IsTerminal(); }
  int score() const { return env_->Score(); }
  int step_count() const { return env_->StepCount(); }
  std::vector<int> players_to_act() const { return env_->PlayersToAct(); }
  std::vector<std::string> legal_actions(int player) const {
    std::vector<std::string> out;
    for (const auto& a : env_->LegalActions(player)) out.push_back(a.label);
    return out;
  }
  std::string observation(int player) const { return env_->Observation(player); }
  std::string description(int player) const { return env_->GameDescription(player); }
  std::string safest_action(int player) const {
    const auto legal = env_->LegalActions(player);
    return env_->SafestAction(player, legal).label;
  }
  std::string view(int player) const { return SeatView(*env_, player).dump(); }

  // Applies one label per acting seat; returns the engine events as JSON.
  std::string step(const std::map<int, std::string>& labels) {
    std::vector<std::pair<int, ActionId>> ds;
    for (const auto& [p, label] : labels) {
      const auto a = FindAction(env_->LegalActions(p), label);
      if (!a) throw IllegalAction("not a legal action for player " + std::to_string(p) + ": " + label);
      ds.emplace_back(p, *a);
    }
    json out = json::array();
    for (const auto& e : env_->Step(ds)) out.push_back({{"type", e.type}, {"player", e.player}, {"text", e.text}});
    return out.dump();
  }

 private:
  std::unique_ptr<GameEnv> env_;
};

std::string Play(const std::string& game, const std::string& layout, const std::string& agent_a,
                 const std::string& agent_b, int episodes, std::uint64_t seed, int horizon, bool swap_positions,
                 bool tom, bool verify, bool include_partner_info, const std::vector<std::string>& names,
                 int workers, const std::string& format) {
  MatchupConfig cfg;
  cfg.game = ParseGameKind(game);
  cfg.layout = layout;
  cfg.agent_a = agent_a;
  cfg.agent_b = agent_b;
  cfg.episodes = episodes;
  cfg.seed = seed;
  cfg.horizon = horizon;
  cfg.swap_positions = swap_positions;
  cfg.flags.tom = tom;
  cfg.flags.verify = verify;
  cfg.flags.include_partner_info = include_partner_info;
  cfg.names = Names(names);
  cfg.workers = workers;
  MatchupReport rep;
  {
    py::gil_scoped_release release;
    rep = RunMatchup(cfg);
  }
  if (format == "csv") return ExportCsv(rep);
  if (format == "text") return ReportText(rep);
  if (format == "jsonl") return ExportJsonl(rep);
  throw ConfigError("format must be csv, jsonl or text");
}

std::vector<qa::McqItem> LoadItems(const std::string& scenarios) {
  return qa::RenderAll(scenarios.empty() ? qa::BundledScenarios() : qa::LoadScenarioFile(scenarios));
}

std::string QaItems(const std::string& scenarios) {
  json out = json::array();
  for (const auto& it : LoadItems(scenarios)) {
    out.push_back({{"scenario_id", it.scenario_id},
                   {"category", std::string(qa::CategoryName(it.category))},
                   {"game", std::string(GameKindName(it.game))},
                   {"system_prompt", it.system_prompt},
                   {"prompt", it.prompt},
                   {"options", it.options},
                   {"gold", it.gold}});
  }
  return out.dump();
}

std::string QaScore(const std::vector<std::vector<std::string>>& responses, int trials, const std::string& scenarios) {
  const auto score = qa::ScoreRun(LoadItems(scenarios), responses, trials);
  json out = json::object();
  for (const auto& [cat, cs] : score.categories) {
    out[std::string(qa::CategoryName(cat))] = {{"per_trial", cs.per_trial},
                                               {"mean", cs.mean},
                                               {"items", cs.items},
                                               {"unmatched", cs.unmatched},
                                               {"random_baseline", cs.random_baseline}};
  }
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_coord_arena, m) {
  m.doc() = "Coordination benchmark engines, agents and evaluation harness.";

  auto base = py::register_exception<ArenaError>(m, "ArenaError", PyExc_RuntimeError);
  py::register_exception<IllegalAction>(m, "IllegalAction", base.ptr());
  py::register_exception<ParseFailure>(m, "ParseFailure", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<LengthMismatch>(m, "LengthMismatch", base.ptr());
  py::register_exception<DegenerateInput>(m, "DegenerateInput", base.ptr());
  py::register_exception<BackendFailure>(m, "BackendFailure", base.ptr());

  py::class_<PyEnv>(m, "Env")
      .def(py::init<const std::string&, const std::string&, std::uint64_t, int, const std::vector<std::string>&,
                    bool>(),
           py::arg("game"), py::arg("layout") = "", py::arg("seed") = 0, py::arg("horizon") = kDefaultKitchenHorizon,
           py::arg("names") = std::vector<std::string>{}, py::arg("include_partner_info") = true)
      .def_property_readonly("game", &PyEnv::game)
      .def_property_readonly("terminal", &PyEnv::terminal)
      .def_property_readonly("score", &PyEnv::score)
      .def_property_readonly("step_count", &PyEnv::step_count)
      .def("players_to_act", &PyEnv::players_to_act)
      .def("legal_actions", &PyEnv::legal_actions, py::arg("player"))
      .def("observation", &PyEnv::observation, py::arg("player"))
      .def("description", &PyEnv::description, py::arg("player"))
      .def("safest_action", &PyEnv::safest_action, py::arg("player"))
      .def("_view", &PyEnv::view, py::arg("player"))
      .def("_step", &PyEnv::step, py::arg("labels"));

  m.def("_play", &Play, py::arg("game"), py::arg("layout"), py::arg("agent_a"), py::arg("agent_b"),
        py::arg("episodes"), py::arg("seed"), py::arg("horizon"), py::arg("swap_positions"), py::arg("tom"),
        py::arg("verify"), py::arg("include_partner_info"), py::arg("names"), py::arg("workers"), py::arg("format"));
  m.def("_qa_items", &QaItems, py::arg("scenarios") = "");
  m.def("_qa_score", &QaScore, py::arg("responses"), py::arg("trials"), py::arg("scenarios") = "");
  m.def(
      "correlations",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto c = qa::Correlations(x, y);
        return py::make_tuple(c.pearson, c.spearman);
      },
      py::arg("x"), py::arg("y"), "(pearson, spearman) with tie-averaged ranks.");
  m.def(
      "parse_action",
      [](const std::string& response, const std::vector<std::string>& legal, bool lettered) {
        std::vector<ActionId> ids;
        for (std::size_t i = 0; i < legal.size(); ++i) ids.push_back({GameKind::kHanabi, static_cast<int>(i), legal[i]});
        return ParseAction(response, ids, lettered).label;
      },
      py::arg("response"), py::arg("legal"), py::arg("lettered") = false,
      "Grounds a free-form reply to one of the legal labels; raises ParseFailure.");
  m.def("parse_agent_spec", [](const std::string& spec) { ParseAgentSpec(spec); }, py::arg("spec"),
        "Validates an agent spec string; raises ConfigError.");
}
