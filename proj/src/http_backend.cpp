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


#include <algorithm>
#include <cstdlib>
#include <thread>

#include "affectkit/error.hpp"
#include "affectkit/llm.hpp"
#include "httplib.h"

namespace affect::llm {

namespace {

struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // .../chat/completions
};

ParsedUrl split_endpoint(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::configuration, "endpoint '" + endpoint + "' must start with http:// or https://");
  }
  const auto path_start = endpoint.find('/', scheme_end + 3);
  ParsedUrl url;
  url.base = endpoint.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "" : endpoint.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  if (path.empty()) path = "/v1";
  if (!path.ends_with("/chat/completions")) path += "/chat/completions";
  url.path = path;
  return url;
}

std::string env_or_empty(const char* name) {
  const char* value = std::getenv(name);
  return value ? value : "";
}

void configure(httplib::Client& client, const HttpConfig& config) {
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
}

}  // namespace

class HttpConversation : public Conversation {
 public:
  explicit HttpConversation(HttpBackend& backend) : backend_(backend) {}

  Reply reply(std::span<const Message> history, const PromptMessage& prompt) override {
    return backend_.complete(history, prompt);
  }

 private:
  HttpBackend& backend_;
};

HttpConfig http_config_from_env() {
  HttpConfig config;
  config.endpoint = env_or_empty(kEndpointEnv);
  config.api_key = env_or_empty(kApiKeyEnv);
  if (auto model = env_or_empty(kModelEnv); !model.empty()) config.model = std::move(model);
  return config;
}

TokenBucket::TokenBucket(double per_minute, double burst)
    : rate_per_second_(per_minute / 60.0),
      capacity_(std::max(1.0, burst)),
      tokens_(std::max(1.0, burst)),
      last_(std::chrono::steady_clock::now()) {
  if (!(per_minute > 0.0)) throw Error(ErrorKind::configuration, "request rate must be positive");
}

void TokenBucket::acquire() {
  std::unique_lock lock(mutex_);
  while (true) {
    const auto now = std::chrono::steady_clock::now();
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(capacity_, tokens_ + elapsed * rate_per_second_);
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    const double wait = (1.0 - tokens_) / rate_per_second_;
    lock.unlock();
    std::this_thread::sleep_for(std::chrono::duration<double>(wait));
    lock.lock();
  }
}

HttpBackend::HttpBackend(HttpConfig config)
    : config_(std::move(config)), bucket_(config_.requests_per_minute, 1.0) {}

nlohmann::ordered_json HttpBackend::descriptor() const {
  return {{"kind", kind()}, {"model", config_.model}, {"temperature", config_.temperature}};
}

std::unique_ptr<Conversation> HttpBackend::start_conversation() {
  if (config_.endpoint.empty()) {
    throw Error(ErrorKind::configuration,
                std::string("no chat endpoint configured; set ") + kEndpointEnv);
  }
  const auto url = split_endpoint(config_.endpoint);
  if (config_.probe_on_open) {
    httplib::Client client(url.base);
    configure(client, config_);
    // Any HTTP answer proves the server is reachable.
    if (!client.Get("/")) {
      throw Error(ErrorKind::connection, "cannot reach chat endpoint " + url.base);
    }
  }
  return std::make_unique<HttpConversation>(*this);
}

Reply HttpBackend::complete(std::span<const Message> history, const PromptMessage& prompt) {
  const auto url = split_endpoint(config_.endpoint);

  nlohmann::json body;
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  auto messages = nlohmann::json::array();
  for (const auto& m : history) messages.push_back({{"role", to_string(m.role)}, {"content", m.text}});
  messages.push_back({{"role", "user"}, {"content", prompt.text}});
  body["messages"] = std::move(messages);
  const auto payload = body.dump();

  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  ErrorKind last_kind = ErrorKind::transport;
  std::string last_message;
  auto delay = config_.backoff;
  const std::size_t max_attempts = config_.max_retries + 1;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    bucket_.acquire();
    httplib::Client client(url.base);
    configure(client, config_);
    const auto result = client.Post(url.path, headers, payload, "application/json");
    if (!result) {
      const auto err = result.error();
      last_kind = err == httplib::Error::Connection ? ErrorKind::connection
                  : (err == httplib::Error::Read || err == httplib::Error::Write) ? ErrorKind::timeout
                                                                                  : ErrorKind::transport;
      last_message = "request failed: " + httplib::to_string(err);
      continue;
    }
    if (result->status == 429 || result->status >= 500) {
      last_kind = ErrorKind::transport;
      last_message = "server answered HTTP " + std::to_string(result->status);
      continue;
    }
    if (result->status != 200) {
      throw Error(ErrorKind::protocol, "chat endpoint answered HTTP " + std::to_string(result->status) + ": " +
                                           result->body.substr(0, 200));
    }
    try {
      const auto reply = nlohmann::json::parse(result->body);
      return {reply.at("choices").at(0).at("message").at("content").get<std::string>(), attempt};
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::protocol, std::string("unexpected chat completion payload: ") + e.what());
    }
  }
  throw Error(last_kind, last_message + " (after " + std::to_string(max_attempts) + " attempts)");
}

}  // namespace affect::llm
