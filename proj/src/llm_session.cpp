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


#include <chrono>
#include <cstdio>
#include <ctime>

#include "affectkit/error.hpp"
#include "affectkit/llm.hpp"

namespace affect::llm {

std::string_view to_string(Role role) noexcept { return role == Role::user ? "user" : "assistant"; }

nlohmann::ordered_json Backend::descriptor() const { return {{"kind", kind()}}; }

std::string Backend::next_session_id() {
  const auto n = ++sessions_opened_;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04zu", n);
  return kind() + "-" + buffer;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

ChatSession open_session(Backend& backend) {
  auto conversation = backend.start_conversation();
  return ChatSession(backend.next_session_id(), std::move(conversation));
}

std::string ChatSession::send(const PromptMessage& prompt) {
  // The transcript only grows by complete user/assistant pairs.
  auto reply = conversation_->reply(transcript_, prompt);
  attempts_ += reply.attempts;
  transcript_.push_back({Role::user, prompt.tag, prompt.text, utc_timestamp()});
  transcript_.push_back({Role::assistant, {}, reply.text, utc_timestamp()});
  return std::move(reply.text);
}

nlohmann::ordered_json transcript_to_json(const ChatSession& session, bool with_timestamps) {
  nlohmann::ordered_json j;
  j["session_id"] = session.id();
  j["attempts"] = session.attempts();
  auto messages = nlohmann::ordered_json::array();
  for (const auto& m : session.transcript()) {
    nlohmann::ordered_json entry;
    entry["role"] = to_string(m.role);
    if (!m.tag.empty()) entry["tag"] = m.tag;
    entry["text"] = m.text;
    if (with_timestamps) entry["timestamp"] = m.timestamp;
    messages.push_back(std::move(entry));
  }
  j["messages"] = std::move(messages);
  return j;
}

namespace {

class ScriptedConversation : public Conversation {
 public:
  ScriptedConversation(const ScriptedBackend::Responder& responder, std::size_t index)
      : responder_(responder), index_(index) {}

  Reply reply(std::span<const Message>, const PromptMessage& prompt) override {
    return {responder_(prompt, index_), 1};
  }

 private:
  const ScriptedBackend::Responder& responder_;
  std::size_t index_;
};

}  // namespace

ScriptedBackend::ScriptedBackend(Responder responder) : responder_(std::move(responder)) {}

std::unique_ptr<ScriptedBackend> ScriptedBackend::fixed(std::string reply) {
  return std::make_unique<ScriptedBackend>([reply = std::move(reply)](const PromptMessage&, std::size_t) { return reply; });
}

std::unique_ptr<ScriptedBackend> ScriptedBackend::scripted(std::vector<std::vector<std::string>> replies) {
  struct Script {
    std::vector<std::vector<std::string>> replies;
    std::vector<std::size_t> cursor;
    std::mutex mutex;
  };
  auto script = std::make_shared<Script>();
  script->cursor.assign(replies.size(), 0);
  script->replies = std::move(replies);
  return std::make_unique<ScriptedBackend>([script](const PromptMessage&, std::size_t session) {
    std::lock_guard lock(script->mutex);
    if (session >= script->replies.size() || script->cursor[session] >= script->replies[session].size()) {
      throw Error(ErrorKind::fixture_exhausted, "scripted backend has no reply left for session " +
                                                    std::to_string(session + 1));
    }
    return script->replies[session][script->cursor[session]++];
  });
}

std::unique_ptr<Conversation> ScriptedBackend::start_conversation() {
  return std::make_unique<ScriptedConversation>(responder_, next_index_++);
}

}  // namespace affect::llm
