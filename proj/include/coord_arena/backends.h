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

#ifndef COORD_ARENA_BACKENDS_H_
#define COORD_ARENA_BACKENDS_H_

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace coord_arena {

struct ChatMessage {
  std::string role;  // system, user or assistant
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct Completion {
  std::string text;
  double latency_seconds = 0.0;
  int attempts = 1;
  std::optional<int> prompt_tokens;
  std::optional<int> completion_tokens;
};

// A text-completion source. Implementations must tolerate concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual Completion Complete(const std::vector<ChatMessage>& messages) = 0;
  virtual std::string Name() const = 0;
};

void ValidateMessages(const std::vector<ChatMessage>& messages);

// Pops scripted responses in order; ReplayExhausted past the end.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(std::vector<std::string> script, std::string name = "replay");
  static std::shared_ptr<ReplayBackend> FromFile(const std::string& path);

  Completion Complete(const std::vector<ChatMessage>& messages) override;
  std::string Name() const override { return name_; }
  std::size_t remaining() const;
  std::size_t consumed() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> script_;
  std::size_t next_ = 0;
  std::string name_;
};

// Wraps a callable; used for scripted verifiers and tests.
class CallbackBackend final : public Backend {
 public:
  using Fn = std::function<std::string(const std::vector<ChatMessage>&)>;
  explicit CallbackBackend(Fn fn, std::string name = "callback");
  Completion Complete(const std::vector<ChatMessage>& messages) override;
  std::string Name() const override { return name_; }
  int calls() const;

 private:
  mutable std::mutex mu_;
  Fn fn_;
  std::string name_;
  int calls_ = 0;
};

struct HttpConfig {
  std::string endpoint;  // e.g. http://localhost:8000/v1/chat/completions
  std::string model;
  double temperature = 0.0;
  std::optional<int> max_tokens;
  std::string api_key;  // empty: read COORD_ARENA_API_KEY
  double timeout_seconds = 60.0;
  int max_attempts = 5;
  double base_delay_seconds = 1.0;
  double backoff_factor = 2.0;
  // Replaceable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(double)> sleep;
};

struct HttpAttempt {
  int status = 0;  // 0 for transport errors
  std::string error;
  double delay_before_seconds = 0.0;
};

// Chat-completion client: POST {model, messages, temperature} and return
// choices[0].message.content. Retries 429, 5xx and transport errors with
// exponential backoff.
class HttpChatBackend final : public Backend {
 public:
  explicit HttpChatBackend(HttpConfig config);
  Completion Complete(const std::vector<ChatMessage>& messages) override;
  std::string Name() const override { return "http:" + config_.model; }
  const HttpConfig& config() const { return config_; }
  // Attempts made by the most recent call on any thread.
  std::vector<HttpAttempt> last_attempts() const;

 private:
  HttpConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  mutable std::mutex mu_;
  std::vector<HttpAttempt> last_attempts_;
};

// Request body for the chat-completion schema.
std::string ChatRequestBody(const std::string& model, const std::vector<ChatMessage>& messages, double temperature,
                            std::optional<int> max_tokens = std::nullopt);

// Per-call log sink (timestamp, backend, latency, token counts); defaults to
// silent. Set to e.g. stderr in the CLI.
void SetCallLog(std::function<void(const std::string&)> sink);
void LogCall(const std::string& backend, const Completion& completion);

}  // namespace coord_arena

#endif  // COORD_ARENA_BACKENDS_H_
