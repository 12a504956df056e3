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

#include "coord_arena/backends.h"

#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <regex>
#include <sstream>
#include <thread>

#include "coord_arena/errors.h"
#include "coord_arena/resources.h"
#include "httplib.h"
#include "json.hpp"

namespace coord_arena {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::mutex& LogMutex() {
  static std::mutex mu;
  return mu;
}

std::function<void(const std::string&)>& LogSink() {
  static std::function<void(const std::string&)> sink;
  return sink;
}

}  // namespace

void ValidateMessages(const std::vector<ChatMessage>& messages) {
  if (messages.empty()) throw ConfigError("completion requires at least one message");
  for (const auto& m : messages) {
    if (m.role != "system" && m.role != "user" && m.role != "assistant") {
      throw ConfigError("invalid message role: " + m.role);
    }
  }
}

void SetCallLog(std::function<void(const std::string&)> sink) {
  std::lock_guard<std::mutex> lock(LogMutex());
  LogSink() = std::move(sink);
}

void LogCall(const std::string& backend, const Completion& c) {
  std::lock_guard<std::mutex> lock(LogMutex());
  if (!LogSink()) return;
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream line;
  line << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << " backend=" << backend << " latency=" << std::fixed
       << std::setprecision(3) << c.latency_seconds << " attempts=" << c.attempts;
  if (c.prompt_tokens) line << " prompt_tokens=" << *c.prompt_tokens;
  if (c.completion_tokens) line << " completion_tokens=" << *c.completion_tokens;
  LogSink()(line.str());
}

// ---------------------------------------------------------------- Replay

ReplayBackend::ReplayBackend(std::vector<std::string> script, std::string name)
    : script_(std::move(script)), name_(std::move(name)) {}

std::shared_ptr<ReplayBackend> ReplayBackend::FromFile(const std::string& path) {
  const std::string text = ReadFile(path);
  std::vector<std::string> script;
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '[') {
      script = nlohmann::json::parse(text).get<std::vector<std::string>>();
    } else {
      std::istringstream in(text);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        script.push_back(line.front() == '"' ? nlohmann::json::parse(line).get<std::string>() : line);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad replay script " + path + ": " + e.what());
  }
  return std::make_shared<ReplayBackend>(std::move(script), "replay:" + path);
}

Completion ReplayBackend::Complete(const std::vector<ChatMessage>& messages) {
  ValidateMessages(messages);
  std::lock_guard<std::mutex> lock(mu_);
  if (next_ >= script_.size()) throw ReplayExhausted(name_ + " has no responses left");
  Completion c{script_[next_++], 0.0, 1, std::nullopt, std::nullopt};
  return c;
}

std::size_t ReplayBackend::remaining() const {
  std::lock_guard<std::mutex> lock(mu_);
  return script_.size() - next_;
}

std::size_t ReplayBackend::consumed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return next_;
}

// ---------------------------------------------------------------- Callback

CallbackBackend::CallbackBackend(Fn fn, std::string name) : fn_(std::move(fn)), name_(std::move(name)) {}

Completion CallbackBackend::Complete(const std::vector<ChatMessage>& messages) {
  ValidateMessages(messages);
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
  }
  const auto start = Clock::now();
  Completion c;
  c.text = fn_(messages);
  c.latency_seconds = SecondsSince(start);
  return c;
}

int CallbackBackend::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

// ---------------------------------------------------------------- HTTP

std::string ChatRequestBody(const std::string& model, const std::vector<ChatMessage>& messages, double temperature,
                            std::optional<int> max_tokens) {
  nlohmann::json body;
  body["model"] = model;
  body["messages"] = nlohmann::json::array();
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  body["temperature"] = temperature;
  if (max_tokens) body["max_tokens"] = *max_tokens;
  return body.dump();
}

HttpChatBackend::HttpChatBackend(HttpConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty() || config_.model.empty()) throw ConfigError("http backend requires endpoint and model");
  if (config_.max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, kUrl)) throw ConfigError("bad endpoint URL: " + config_.endpoint);
  scheme_host_port_ = m[1];
  path_ = m[2].matched && m[2].length() > 0 ? std::string(m[2]) : "/v1/chat/completions";
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("COORD_ARENA_API_KEY")) config_.api_key = key;
  }
  if (!config_.sleep) {
    config_.sleep = [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
  }
}

std::vector<HttpAttempt> HttpChatBackend::last_attempts() const {
  std::lock_guard<std::mutex> lock(mu_);
  return last_attempts_;
}

Completion HttpChatBackend::Complete(const std::vector<ChatMessage>& messages) {
  ValidateMessages(messages);
  const std::string body =
      ChatRequestBody(config_.model, messages, config_.temperature, config_.max_tokens);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::vector<HttpAttempt> attempts;
  const auto start = Clock::now();
  double delay = config_.base_delay_seconds;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    HttpAttempt record;
    if (attempt > 1) {
      record.delay_before_seconds = delay;
      config_.sleep(delay);
      delay *= config_.backoff_factor;
    }
    httplib::Client client(scheme_host_port_);
    const auto secs = static_cast<time_t>(config_.timeout_seconds);
    const auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      record.error = httplib::to_string(res.error());
      last_error = "transport error: " + record.error;
      attempts.push_back(record);
      continue;
    }
    record.status = res->status;
    attempts.push_back(record);
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      last_attempts_ = attempts;
    }
    if (res->status != 200) {
      throw BackendFailure("HTTP " + std::to_string(res->status) + " from " + config_.endpoint + ": " +
                           res->body.substr(0, 200));
    }
    Completion c;
    try {
      const auto j = nlohmann::json::parse(res->body);
      c.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
      if (j.contains("usage")) {
        const auto& u = j["usage"];
        if (u.contains("prompt_tokens")) c.prompt_tokens = u["prompt_tokens"].get<int>();
        if (u.contains("completion_tokens")) c.completion_tokens = u["completion_tokens"].get<int>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw BackendFailure(std::string("malformed completion response: ") + e.what());
    }
    c.latency_seconds = SecondsSince(start);
    c.attempts = attempt;
    LogCall(Name(), c);
    return c;
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    last_attempts_ = attempts;
  }
  throw BackendFailure("gave up after " + std::to_string(config_.max_attempts) + " attempts: " + last_error);
}

}  // namespace coord_arena
