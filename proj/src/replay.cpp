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


#include <fstream>
#include <sstream>

#include "affectkit/error.hpp"
#include "affectkit/llm.hpp"

namespace affect::llm {

namespace {

class ReplayConversation : public Conversation {
 public:
  ReplayConversation(std::shared_ptr<const ReplayFixture> fixture, std::size_t index)
      : fixture_(std::move(fixture)), index_(index) {}

  Reply reply(std::span<const Message>, const PromptMessage& prompt) override {
    const bool have_session = index_ < fixture_->sessions.size();
    if (!have_session || cursor_ >= fixture_->sessions[index_].exchanges.size()) {
      throw Error(ErrorKind::fixture_exhausted, "replay fixture has no recorded exchange " +
                                                    std::to_string(cursor_ + 1) + " for session " +
                                                    std::to_string(index_ + 1));
    }
    const auto& recorded = fixture_->sessions[index_].exchanges[cursor_];
    const auto digest = prompt_digest(prompt.text);
    if (digest != recorded.prompt_digest) {
      throw Error(ErrorKind::digest_mismatch,
                  "prompt digest mismatch in session " + std::to_string(index_ + 1) + ", exchange " +
                      std::to_string(cursor_ + 1) + ": recorded template " + recorded.tag + ", sent template " +
                      prompt.tag);
    }
    ++cursor_;
    return {recorded.response, 1};
  }

 private:
  std::shared_ptr<const ReplayFixture> fixture_;
  std::size_t index_;
  std::size_t cursor_ = 0;
};

class RecordingConversation : public Conversation {
 public:
  RecordingConversation(std::unique_ptr<Conversation> inner, std::shared_ptr<ReplaySession> sink,
                        std::mutex& mutex)
      : inner_(std::move(inner)), sink_(std::move(sink)), mutex_(mutex) {}

  Reply reply(std::span<const Message> history, const PromptMessage& prompt) override {
    auto reply = inner_->reply(history, prompt);
    std::lock_guard lock(mutex_);
    sink_->exchanges.push_back({prompt.tag, prompt_digest(prompt.text), reply.text});
    return reply;
  }

 private:
  std::unique_ptr<Conversation> inner_;
  std::shared_ptr<ReplaySession> sink_;
  std::mutex& mutex_;
};

}  // namespace

ReplayFixture replay_fixture_from_json(const nlohmann::json& j) {
  try {
    ReplayFixture f;
    const auto& meta = j.at("metadata");
    f.model = meta.value("model", "");
    f.captured = meta.value("captured", "");
    for (const auto& s : j.at("sessions")) {
      ReplaySession session;
      for (const auto& e : s.at("exchanges")) {
        session.exchanges.push_back({e.value("template", ""), e.at("prompt_digest").get<std::string>(),
                                     e.at("response").get<std::string>()});
      }
      f.sessions.push_back(std::move(session));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed replay fixture: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const ReplayFixture& fixture) {
  nlohmann::ordered_json j;
  j["metadata"] = {{"model", fixture.model}, {"captured", fixture.captured}};
  auto sessions = nlohmann::ordered_json::array();
  for (const auto& s : fixture.sessions) {
    auto exchanges = nlohmann::ordered_json::array();
    for (const auto& e : s.exchanges) {
      exchanges.push_back({{"template", e.tag}, {"prompt_digest", e.prompt_digest}, {"response", e.response}});
    }
    sessions.push_back({{"exchanges", std::move(exchanges)}});
  }
  j["sessions"] = std::move(sessions);
  return j;
}

ReplayFixture load_replay_fixture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open replay fixture " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, "replay fixture " + path.string() + " is not valid JSON: " + e.what());
  }
  return replay_fixture_from_json(j);
}

void save_replay_fixture(const ReplayFixture& fixture, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write replay fixture " + path.string());
  out << to_json(fixture).dump(2) << '\n';
}

ReplayBackend::ReplayBackend(std::shared_ptr<const ReplayFixture> fixture) : fixture_(std::move(fixture)) {
  if (!fixture_) throw Error(ErrorKind::configuration, "replay backend needs a fixture");
}

nlohmann::ordered_json ReplayBackend::descriptor() const {
  return {{"kind", kind()}, {"model", fixture_->model}, {"captured", fixture_->captured}};
}

std::unique_ptr<Conversation> ReplayBackend::start_conversation() {
  return std::make_unique<ReplayConversation>(fixture_, next_session_++);
}

RecordingBackend::RecordingBackend(Backend& inner, std::string model, std::string captured)
    : inner_(inner), model_(std::move(model)), captured_(std::move(captured)) {}

std::unique_ptr<Conversation> RecordingBackend::start_conversation() {
  auto inner = inner_.start_conversation();
  auto sink = std::make_shared<ReplaySession>();
  {
    std::lock_guard lock(mutex_);
    sessions_.push_back(sink);
  }
  return std::make_unique<RecordingConversation>(std::move(inner), std::move(sink), mutex_);
}

ReplayFixture RecordingBackend::fixture() const {
  std::lock_guard lock(mutex_);
  ReplayFixture f{model_, captured_, {}};
  for (const auto& s : sessions_) f.sessions.push_back(*s);
  return f;
}

}  // namespace affect::llm
