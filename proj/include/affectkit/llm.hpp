// Copyright 2026 The affectkit Authors
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


#ifndef AFFECTKIT_LLM_HPP_
#define AFFECTKIT_LLM_HPP_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace affect::llm {

enum class Role { user, assistant };

std::string_view to_string(Role role) noexcept;

struct Message {
  Role role;
  std::string tag;  // template id of user messages ("P1", "P1-block", ...), empty for replies
  std::string text;
  std::string timestamp;  // UTC, ISO 8601
};

// An outgoing user message; the tag names the template it was rendered from.
struct PromptMessage {
  std::string tag;
  std::string text;
};

struct Reply {
  std::string text;
  std::size_t attempts = 1;
};

/// Backend-side state of one chat session.
class Conversation {
 public:
  virtual ~Conversation() = default;
  /// `history` holds the session transcript before `prompt`.
  virtual Reply reply(std::span<const Message> history, const PromptMessage& prompt) = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string kind() const = 0;
  virtual nlohmann::ordered_json descriptor() const;
  virtual std::unique_ptr<Conversation> start_conversation() = 0;

  /// "<kind>-0001", "<kind>-0002", ... per backend instance.
  std::string next_session_id();

 private:
  std::atomic<std::size_t> sessions_opened_{0};
};

// A chat session with strictly alternating user/assistant messages. A
// failed send leaves the transcript untouched. Not safe for concurrent use;
// distinct sessions are independent.
class ChatSession {
 public:
  const std::string& id() const noexcept { return id_; }
  const std::vector<Message>& transcript() const noexcept { return transcript_; }
  std::size_t attempts() const noexcept { return attempts_; }

  std::string send(const PromptMessage& prompt);

 private:
  friend ChatSession open_session(Backend& backend);
  ChatSession(std::string id, std::unique_ptr<Conversation> conversation)
      : id_(std::move(id)), conversation_(std::move(conversation)) {}

  std::string id_;
  std::unique_ptr<Conversation> conversation_;
  std::vector<Message> transcript_;
  std::size_t attempts_ = 0;
};

ChatSession open_session(Backend& backend);
inline std::string send(ChatSession& session, const PromptMessage& prompt) { return session.send(prompt); }

nlohmann::ordered_json transcript_to_json(const ChatSession& session, bool with_timestamps = true);

std::string utc_timestamp();

// ---- scripted mock -------------------------------------------------------

class ScriptedBackend : public Backend {
 public:
  /// Called with the prompt and the 0-based index of the session.
  using Responder = std::function<std::string(const PromptMessage&, std::size_t session_index)>;

  explicit ScriptedBackend(Responder responder);
  /// Always answers `reply`.
  static std::unique_ptr<ScriptedBackend> fixed(std::string reply);
  /// Session i answers with replies[i] in order; running out is a
  /// fixture_exhausted error.
  static std::unique_ptr<ScriptedBackend> scripted(std::vector<std::vector<std::string>> replies);

  std::string kind() const override { return "mock"; }
  std::unique_ptr<Conversation> start_conversation() override;

 private:
  Responder responder_;
  std::atomic<std::size_t> next_index_{0};
};

// ---- replay ---------------------------------------------------------------

/// Line endings folded to LF, trailing blanks removed from every line and
/// from the end of the text.
std::string normalize_prompt(std::string_view text);
/// Lowercase hex SHA-256 of normalize_prompt(text).
std::string prompt_digest(std::string_view text);

struct ReplayExchange {
  std::string tag;
  std::string prompt_digest;
  std::string response;
};

struct ReplaySession {
  std::vector<ReplayExchange> exchanges;
};

struct ReplayFixture {
  std::string model;
  std::string captured;  // capture date
  std::vector<ReplaySession> sessions;
};

ReplayFixture replay_fixture_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ReplayFixture& fixture);
ReplayFixture load_replay_fixture(const std::filesystem::path& path);
void save_replay_fixture(const ReplayFixture& fixture, const std::filesystem::path& path);

// Answers from a recorded fixture. Sessions are handed out in the order they
// are opened; within a session exchanges are consumed in order and every
// prompt must match its recorded digest.
class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(std::shared_ptr<const ReplayFixture> fixture);

  std::string kind() const override { return "replay"; }
  nlohmann::ordered_json descriptor() const override;
  std::unique_ptr<Conversation> start_conversation() override;

 private:
  std::shared_ptr<const ReplayFixture> fixture_;
  std::atomic<std::size_t> next_session_{0};
};

// Wraps another backend and captures every exchange as a replay fixture.
class RecordingBackend : public Backend {
 public:
  RecordingBackend(Backend& inner, std::string model, std::string captured);

  std::string kind() const override { return inner_.kind(); }
  nlohmann::ordered_json descriptor() const override { return inner_.descriptor(); }
  std::unique_ptr<Conversation> start_conversation() override;

  ReplayFixture fixture() const;

 private:
  Backend& inner_;
  std::string model_;
  std::string captured_;
  mutable std::mutex mutex_;
  std::vector<std::shared_ptr<ReplaySession>> sessions_;
};

// ---- HTTP ----------------------------------------------------------------

struct HttpConfig {
  std::string endpoint;  // base URL or full .../chat/completions URL
  std::string api_key;
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.0;
  std::chrono::milliseconds timeout{60000};
  std::size_t max_retries = 3;
  std::chrono::milliseconds backoff{500};  // doubled after every failed attempt
  double requests_per_minute = 60.0;
  bool probe_on_open = true;
};

inline constexpr const char* kEndpointEnv = "AFFECTKIT_ENDPOINT";
inline constexpr const char* kApiKeyEnv = "AFFECTKIT_API_KEY";
inline constexpr const char* kModelEnv = "AFFECTKIT_MODEL";

/// Reads the endpoint, key and model from the environment. Missing values
/// stay empty; HttpBackend reports them when a session is opened.
HttpConfig http_config_from_env();

class TokenBucket {
 public:
  TokenBucket(double per_minute, double burst);
  /// Blocks until a token is available.
  void acquire();

 private:
  std::mutex mutex_;
  double rate_per_second_;
  double capacity_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
};

/// Generic chat-completion endpoint: POST {model, messages, temperature},
/// answer taken from choices[0].message.content.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpConfig config);

  std::string kind() const override { return "http"; }
  nlohmann::ordered_json descriptor() const override;
  /// Throws Error(configuration) without an endpoint and Error(connection)
  /// when the probe cannot reach the server.
  std::unique_ptr<Conversation> start_conversation() override;

  const HttpConfig& config() const noexcept { return config_; }

 private:
  friend class HttpConversation;
  Reply complete(std::span<const Message> history, const PromptMessage& prompt);

  HttpConfig config_;
  TokenBucket bucket_;
};

}  // namespace affect::llm

#endif  // AFFECTKIT_LLM_HPP_
