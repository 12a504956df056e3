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

#include "coord_arena/cac_agent.h"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "coord_arena/errors.h"
#include "coord_arena/text.h"

namespace coord_arena {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Position just past the last case-insensitive occurrence of `marker`.
std::optional<std::size_t> AfterLast(std::string_view text, std::string_view marker) {
  const std::string lower = Lower(text);
  const auto pos = lower.rfind(Lower(marker));
  if (pos == std::string::npos) return std::nullopt;
  return pos + marker.size();
}

const char* kReaskMessage =
    "I could not match your response to any of the available actions. Reply with exactly one of the available "
    "actions, formatted as Action: <action>.";

}  // namespace

std::string NormalizeText(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      if (space && !out.empty()) out.push_back(' ');
      space = false;
      out.push_back(static_cast<char>(std::tolower(u)));
    } else {
      space = true;
    }
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::string norm = NormalizeText(text);
  std::size_t start = 0;
  while (start < norm.size()) {
    auto end = norm.find(' ', start);
    if (end == std::string::npos) end = norm.size();
    tokens.push_back(norm.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

double TokenOverlap(std::string_view a, std::string_view b) {
  const auto ta = Tokenize(a);
  const auto tb = Tokenize(b);
  const std::set<std::string> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
  if (sa.empty() || sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.count(t);
  return 2.0 * static_cast<double>(common) / static_cast<double>(sa.size() + sb.size());
}

std::optional<int> FuzzyMatch(std::string_view text, std::span<const std::string> options, const ParseOptions& opts) {
  int best = -1;
  double best_score = -1.0, runner_up = 0.0;
  for (std::size_t i = 0; i < options.size(); ++i) {
    const double s = TokenOverlap(text, options[i]);
    if (s > best_score) {
      runner_up = std::max(runner_up, best_score);
      best_score = s;
      best = static_cast<int>(i);
    } else {
      runner_up = std::max(runner_up, s);
    }
  }
  if (best < 0 || best_score < opts.threshold || best_score - runner_up < opts.margin) return std::nullopt;
  return best;
}

std::optional<int> ExtractLetter(std::string_view text, int num_options) {
  // Ordered from most to least explicit; the first pattern naming exactly
  // one in-range letter wins.
  static const std::vector<std::regex> kPatterns = {
      std::regex(R"(^\s*\(?([A-Z])\)?\s*[.):]?\s*$)"),
      std::regex(R"([Aa]nswer(?:\s+is)?\s*:?\s*\(?([A-Z])(?![A-Za-z0-9']))"),
      std::regex(R"([Oo]ption\s+\(?([A-Z])(?![A-Za-z0-9']))"),
      std::regex(R"(\(([A-Z])\))"),
      std::regex(R"((?:^|[^A-Za-z0-9'])([A-Z])[.)](?=\s|$))"),
  };
  const std::string s(text);
  for (const auto& re : kPatterns) {
    std::set<int> found;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
      const int idx = (*it)[1].str()[0] - 'A';
      if (idx >= 0 && idx < num_options) found.insert(idx);
    }
    if (found.size() == 1) return *found.begin();
  }
  return std::nullopt;
}

std::string ActionSegment(std::string_view response) {
  std::string seg(response);
  if (auto pos = AfterLast(response, "action:")) seg = std::string(response.substr(*pos));
  seg = Trim(seg);
  const auto nl = seg.find('\n');
  if (nl != std::string::npos) seg = Trim(seg.substr(0, nl));
  return seg;
}

ActionId ParseAction(std::string_view response, std::span<const ActionId> legal, bool lettered,
                     const ParseOptions& opts) {
  if (legal.empty()) throw IllegalAction("no legal actions to parse against");
  const std::string seg = ActionSegment(response);
  if (seg.empty()) throw ParseFailure("empty response");
  const std::string norm = NormalizeText(seg);
  for (const auto& a : legal) {
    if (NormalizeText(a.label) == norm) return a;
  }
  if (lettered) {
    if (auto idx = ExtractLetter(seg, static_cast<int>(legal.size()))) return legal[*idx];
  }
  const auto labels = text::Labels(legal);
  if (auto idx = FuzzyMatch(seg, labels, opts)) return legal[*idx];
  throw ParseFailure("no legal action matches: " + seg.substr(0, 120));
}

std::string ToMNotes::AsText() const {
  if (explanation.empty()) return raw;
  std::string out = "Partner Action Explanation: " + explanation;
  if (!clue_suggestion.empty()) out += "\nClue Suggestion: " + clue_suggestion;
  return out;
}

ToMNotes ParseTomReply(std::string_view reply) {
  ToMNotes notes;
  notes.raw = std::string(reply);
  const std::string lower = Lower(reply);
  const std::string kExpl = "partner action explanation:";
  const std::string kClue = "clue suggestion:";
  const auto e = lower.find(kExpl);
  const auto c = lower.find(kClue);
  if (e != std::string::npos) {
    const auto start = e + kExpl.size();
    const auto end = (c != std::string::npos && c > start) ? c : reply.size();
    notes.explanation = Trim(reply.substr(start, end - start));
  }
  if (c != std::string::npos) notes.clue_suggestion = Trim(reply.substr(c + kClue.size()));
  notes.well_formed = !notes.explanation.empty() && !notes.clue_suggestion.empty();
  return notes;
}

Verdict ParseVerdict(std::string_view reply) {
  const auto pos = AfterLast(reply, "verification:");
  if (!pos) return Verdict::kNotOkay;
  std::string rest = Lower(reply.substr(*pos));
  const auto b = rest.find_first_not_of(" \t\r\n*\"'`");
  if (b == std::string::npos) return Verdict::kNotOkay;
  rest = rest.substr(b);
  if (rest.rfind("not okay", 0) == 0) return Verdict::kNotOkay;
  if (rest.rfind("okay", 0) == 0) return Verdict::kOkay;
  return Verdict::kNotOkay;
}

int DecisionTrace::Count(std::string_view role) const {
  return static_cast<int>(std::count_if(calls.begin(), calls.end(), [&](const auto& c) { return c.role == role; }));
}

void CacConfig::Validate() const {
  if (!planner) throw ConfigError("CAC agent requires a planner backend");
  if (verifier && max_verify_retries < 1) throw ConfigError("max_verify_retries must be at least 1");
  if (max_parse_attempts < 1) throw ConfigError("max_parse_attempts must be at least 1");
}

CacAgent::CacAgent(CacConfig config, std::string name) : config_(std::move(config)), name_(std::move(name)) {
  config_.Validate();
}

void CacAgent::BeginEpisode(Seed, int) { context_ = {}; }

ToMNotes CacAgent::TomInfer(const GameEnv& env, int player, const std::string& partner_action, const std::string& obs,
                            DecisionTrace& trace) {
  BackendCall call;
  call.role = "tom";
  call.messages = {{"system", text::TomSystemPrompt(env.kind(), env.names(), player)},
                   {"user", "My partner's last action: " + partner_action + "\n\nMy latest state information:\n" + obs}};
  const auto c = config_.tom->Complete(call.messages);
  call.response = c.text;
  call.latency_seconds = c.latency_seconds;
  ToMNotes notes = ParseTomReply(c.text);
  call.note = notes.well_formed ? "parsed" : notes.explanation.empty() ? "raw" : "explanation only";
  trace.calls.push_back(std::move(call));
  return notes;
}

Verdict CacAgent::Verify(const std::string& action, const std::string& obs, DecisionTrace& trace) {
  BackendCall call;
  call.role = "verifier";
  call.messages = {{"system", text::VerifierSystemPrompt()},
                   {"user", "Selected Action: " + action + "\n\nCurrent State:\n" + obs}};
  const auto c = config_.verifier->Complete(call.messages);
  call.response = c.text;
  call.latency_seconds = c.latency_seconds;
  const Verdict v = ParseVerdict(c.text);
  call.note = v == Verdict::kOkay ? "Okay" : "Not Okay";
  trace.calls.push_back(std::move(call));
  return v;
}

Decision CacAgent::Decide(const GameEnv& env, int player, std::span<const ActionId> legal,
                          const std::optional<ActionId>& partner_last) {
  if (legal.empty()) throw IllegalAction("decide called with no legal actions");
  auto trace = std::make_shared<DecisionTrace>();
  if (context_.long_term.empty()) context_.long_term = env.GameDescription(player);

  const std::string obs = env.Observation(player);
  context_.working = obs;
  if (env.kind() != GameKind::kHanabi) {
    context_.working = "My Action History: " + text::BracketList(context_.episodic) + "\n\n" + obs;
  }
  if (config_.tom && partner_last) {
    trace->tom = TomInfer(env, player, partner_last->label, obs, *trace);
    context_.working += "\n\n<Partner Analysis>:\n" + trace->tom->AsText();
  }

  const bool lettered = env.kind() != GameKind::kKitchen;
  std::vector<std::string> excluded;
  std::optional<ActionId> chosen;
  int rejections = 0;
  while (!chosen) {
    std::string user = context_.working;
    if (!excluded.empty()) {
      user += "\n\nThese actions were rejected as unsafe; do not choose them: " + text::BracketList(excluded) + ".";
    }
    std::vector<ChatMessage> messages = {
        {"system", context_.long_term}, {"assistant", "Got it."}, {"user", user}};
    std::optional<ActionId> proposal;
    for (int attempt = 0; attempt < config_.max_parse_attempts && !proposal; ++attempt) {
      BackendCall call;
      call.role = "planner";
      call.messages = messages;
      const auto c = config_.planner->Complete(messages);
      call.response = c.text;
      call.latency_seconds = c.latency_seconds;
      try {
        proposal = ParseAction(c.text, legal, lettered, config_.parse);
        call.note = proposal->label;
      } catch (const ParseFailure& e) {
        ++trace->parse_failures;
        call.note = std::string("ParseFailure: ") + e.what();
        messages.push_back({"assistant", c.text});
        messages.push_back({"user", kReaskMessage});
      }
      trace->calls.push_back(std::move(call));
    }
    if (!proposal) {
      trace->fallback = true;
      trace->fallback_reason = "unparseable planner response";
      break;
    }
    if (!config_.verifier) {
      chosen = proposal;
      break;
    }
    if (std::find(excluded.begin(), excluded.end(), proposal->label) != excluded.end()) {
      ++rejections;
    } else if (Verify(proposal->label, obs, *trace) == Verdict::kOkay) {
      chosen = proposal;
      break;
    } else {
      excluded.push_back(proposal->label);
      trace->rejected.push_back(proposal->label);
      ++rejections;
    }
    if (rejections >= config_.max_verify_retries) {
      trace->fallback = true;
      trace->fallback_reason = "verification retries exhausted";
      break;
    }
  }

  if (!chosen) {
    if (config_.fallback_rule == FallbackRule::kFirstLegal) {
      chosen = legal.front();
    } else {
      std::vector<ActionId> remaining;
      for (const auto& a : legal) {
        if (std::find(excluded.begin(), excluded.end(), a.label) == excluded.end()) remaining.push_back(a);
      }
      chosen = remaining.empty() ? env.SafestAction(player, legal) : env.SafestAction(player, remaining);
    }
  }
  trace->chosen = chosen->label;
  context_.episodic.push_back(chosen->label);

  Decision d;
  d.action = *chosen;
  d.fallback = trace->fallback;
  // Backend-reported time only, so replayed episodes export identical reports.
  for (const auto& c : trace->calls) d.latency_seconds += c.latency_seconds;
  d.trace = trace;
  return d;
}

}  // namespace coord_arena
