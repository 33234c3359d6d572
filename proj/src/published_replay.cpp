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

#include "affectkit/error.hpp"
#include "affectkit/experiments.hpp"
#include "affectkit/text.hpp"

namespace affect::experiments {

namespace {

constexpr std::string_view kSituationMarker = "Here is the situation: ";
constexpr std::string_view kAcknowledgement = "Got it.";

class EngineConversation : public llm::Conversation {
 public:
  EngineConversation(const std::map<std::string, occ::AppraisalFrame, std::less<>>& frames,
                     occ::IntensityOptions options)
      : frames_(frames), options_(options) {}

  llm::Reply reply(std::span<const llm::Message>, const llm::PromptMessage& prompt) override {
    const auto pos = prompt.text.rfind(kSituationMarker);
    if (pos == std::string::npos) {
      throw Error(ErrorKind::protocol, "engine backend only answers chatOCC prompts");
    }
    const auto situation = text::trim(std::string_view(prompt.text).substr(pos + kSituationMarker.size()));
    const auto it = frames_.find(situation);
    if (it == frames_.end()) {
      throw Error(ErrorKind::not_found, "no appraisal frame registered for '" + std::string(situation) + "'");
    }
    const auto p = occ::appraise(it->second, options_);
    return {"Emotion: " + std::string(occ::display_name(p.label)) + "\nIntensity: " +
                std::string(occ::to_string(p.intensity)) + "\nRule: " + occ::rule_for(p.label).text,
            1};
  }

 private:
  const std::map<std::string, occ::AppraisalFrame, std::less<>>& frames_;
  occ::IntensityOptions options_;
};

std::vector<std::string> vad_batches(const Dataset& d, const std::vector<PredictionRecord>& predictions,
                                     std::size_t batch_size) {
  const auto aligned = aligned_predictions(d, predictions);
  std::vector<std::string> out;
  for (std::size_t begin = 0; begin < aligned.size(); begin += batch_size) {
    const auto end = std::min(aligned.size(), begin + batch_size);
    out.push_back(prompts::render_vad_table(std::span(aligned).subspan(begin, end - begin)));
  }
  return out;
}

}  // namespace

EngineBackend::EngineBackend(const std::vector<ElicitationCase>& cases, occ::IntensityOptions options)
    : options_(options) {
  for (const auto& c : cases) {
    occ::validate(c.frame);
    frames_.emplace(std::string(text::trim(c.situation)), c.frame);
  }
}

std::unique_ptr<llm::Conversation> EngineBackend::start_conversation() {
  return std::make_unique<EngineConversation>(frames_, options_);
}

std::unique_ptr<llm::ScriptedBackend> published_responses_backend(const ExperimentRequest& request) {
  const auto& f = fixtures();
  std::vector<std::vector<std::string>> script;
  switch (request.id) {
    case ExperimentId::rq1: {
      const Dataset& d = request.dataset ? *request.dataset : f.anet20;
      const std::vector<PredictionRecord>* predictions = nullptr;
      if (d.name() == f.anet20.name()) {
        predictions = request.config.dominance_clause ? &f.anet20_predictions : &f.anet20_failed_dominance;
      } else if (d.name() == f.words20.name()) {
        predictions = &f.words20_predictions;
      } else {
        throw Error(ErrorKind::invalid_argument, "no published responses for dataset '" + d.name() + "'");
      }
      for (auto& table : vad_batches(d, *predictions, request.config.batch_size)) {
        script.push_back({std::string(kAcknowledgement), std::move(table)});
      }
      break;
    }
    case ExperimentId::rq2_numeric: {
      const auto situations = vad_batches(f.anet20, f.anet20_predictions, f.anet20.size());
      const auto words = vad_batches(f.words20, f.words20_predictions, f.words20.size());
      std::string mapping;
      for (std::size_t i = 0; i < f.anet20.size(); ++i) {
        const auto& id = f.anet20.items()[i].id;
        const auto row = std::find_if(f.word_mapping.begin(), f.word_mapping.end(),
                                      [&](const WordMappingRow& r) { return r.situation_id == id; });
        if (row == f.word_mapping.end()) throw Error(ErrorKind::not_found, "no published mapping for " + id);
        if (i > 0) mapping += "\n";
        mapping += std::to_string(i + 1) + ". " + row->numeric_word;
      }
      script.push_back({std::string(kAcknowledgement), situations.at(0), std::string(kAcknowledgement), words.at(0),
                        mapping});
      break;
    }
    case ExperimentId::rq2_latent:
      for (const auto& s : f.anet20.items()) {
        const auto row = std::find_if(f.word_mapping.begin(), f.word_mapping.end(),
                                      [&](const WordMappingRow& r) { return r.situation_id == s.id; });
        if (row == f.word_mapping.end()) throw Error(ErrorKind::not_found, "no published mapping for " + s.id);
        script.push_back({row->free_mapping});
      }
      break;
    case ExperimentId::rq2_generate:
      for (const auto& octant : canonical_octants()) {
        const auto row = std::find_if(f.octant_generation.begin(), f.octant_generation.end(),
                                      [&](const OctantRow& r) { return r.octant == octant; });
        if (row == f.octant_generation.end()) {
          throw Error(ErrorKind::not_found, "no published situation for " + octant_signature(octant));
        }
        script.push_back({row->generated_situation});
      }
      break;
    case ExperimentId::rq3:
      for (const auto& c : f.elicitation) script.push_back({c.reported_prediction});
      break;
  }
  return llm::ScriptedBackend::scripted(std::move(script));
}

llm::ReplayFixture published_fixture(const ExperimentRequest& request) {
  auto scripted = published_responses_backend(request);
  llm::RecordingBackend recorder(*scripted, "gpt-3.5-turbo", "2023-03");
  run(request, recorder);
  return recorder.fixture();
}

}  // namespace affect::experiments
