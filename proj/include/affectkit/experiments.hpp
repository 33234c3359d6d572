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


#ifndef AFFECTKIT_EXPERIMENTS_HPP_
#define AFFECTKIT_EXPERIMENTS_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affectkit/affect_space.hpp"
#include "affectkit/llm.hpp"
#include "affectkit/metrics.hpp"
#include "affectkit/occ.hpp"
#include "affectkit/prompts.hpp"
#include "affectkit/stimuli.hpp"
#include "json.hpp"

namespace affect::experiments {

enum class ExperimentId {
  rq1,           // VAD ratings for situations or words
  rq2_numeric,   // nearest word by the session's own VAD values
  rq2_latent,    // word pair picked straight from the situation text
  rq2_generate,  // situation written for each octant
  rq3,           // chatOCC emotion elicitation
};

inline constexpr std::array<ExperimentId, 5> kAllExperiments = {
    ExperimentId::rq1, ExperimentId::rq2_numeric, ExperimentId::rq2_latent, ExperimentId::rq2_generate,
    ExperimentId::rq3};

std::string_view to_string(ExperimentId id) noexcept;
/// Accepts the names above plus the aliases rq2.1, rq2.2 and rq2.3.
ExperimentId parse_experiment_id(std::string_view name);

struct ExperimentConfig {
  std::size_t batch_size = prompts::kSentimentBatchSize;
  std::size_t parallelism = 1;  // concurrent sessions
  bool dominance_clause = true;
  double neutral_band = kDefaultNeutralBand;
  prompts::WordPickVariant word_pick = prompts::WordPickVariant::standard;
  occ::IntensityOptions intensity;
};

struct ExperimentRequest {
  ExperimentId id = ExperimentId::rq1;
  ExperimentConfig config;
  std::optional<Dataset> dataset;                    // rq1; embedded anet20 when empty
  std::optional<std::map<std::string, WordPair>> expert;  // rq2-latent; embedded expert column when empty
  std::map<std::string, std::string> ratings;        // rq2-generate, keyed by octant signature
};

struct RowError {
  ErrorKind kind;
  std::string message;
};

struct ReportRow {
  std::string id;
  std::string session;
  std::string response;          // raw reply the row was parsed from
  nlohmann::ordered_json parsed;  // null when the row failed
  std::optional<RowError> error;
};

struct RankEntry {
  std::string situation_id;
  std::string word;
  double distance;
  std::size_t rank;
  std::optional<double> reported_distance;
  std::optional<std::size_t> reported_rank;
};

struct ElicitationFailure {
  std::string case_id;
  occ::EmotionLabel expected;
  std::optional<occ::EmotionLabel> predicted;  // empty when the reply did not parse
};

struct Accuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  double fraction() const noexcept { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

struct Aggregates {
  std::vector<CorrelationResult> correlations;
  std::vector<std::pair<Dimension, double>> rmse;  // unit scale
  std::vector<RankEntry> ranks;
  std::optional<MatchTally> tally;
  std::vector<std::string> hallucinations;  // every occurrence, in row order
  std::optional<Accuracy> accuracy;
  std::vector<ElicitationFailure> failures;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::ordered_json backend;
  nlohmann::ordered_json settings;
  std::vector<ReportRow> rows;
  Aggregates aggregates;
  std::vector<std::string> notes;
  std::vector<std::string> sessions;
  std::vector<nlohmann::ordered_json> transcripts;  // with timestamps; not part of the canonical form

  std::size_t parse_failures() const noexcept;
  /// Rows lost to transport, replay or other non-parse errors.
  std::size_t backend_failures() const noexcept;
};

ExperimentReport run_rq1(const Dataset& dataset, llm::Backend& backend, const ExperimentConfig& config = {});
ExperimentReport run_rq2_numeric(const Dataset& situations, const Dataset& words, llm::Backend& backend,
                                 const std::vector<WordMappingRow>& reported = {},
                                 const ExperimentConfig& config = {});
ExperimentReport run_rq2_latent(const Dataset& situations, const Dataset& words, llm::Backend& backend,
                                const std::map<std::string, WordPair>& expert, const ExperimentConfig& config = {});
ExperimentReport run_rq2_generate(llm::Backend& backend, const std::map<std::string, std::string>& ratings = {},
                                  const ExperimentConfig& config = {});
ExperimentReport run_rq3(const std::vector<ElicitationCase>& cases, llm::Backend& backend,
                         const ExperimentConfig& config = {});

/// Dispatches on request.id, filling unset inputs from the embedded fixtures.
ExperimentReport run(const ExperimentRequest& request, llm::Backend& backend);

/// Expert pairs from the embedded word-mapping table.
std::map<std::string, WordPair> embedded_expert_mapping();
/// CSV with columns id,expert_mapping ("word, word").
std::map<std::string, WordPair> load_expert_mapping(const std::filesystem::path& path, const Dataset& words);
/// CSV with columns prompt,rating keyed by octant signature.
std::map<std::string, std::string> load_ratings(const std::filesystem::path& path);

// ---- reports -------------------------------------------------------------

/// Deterministic form: no timestamps, fixed key order.
nlohmann::ordered_json to_json(const ExperimentReport& report);
std::string canonical_json(const ExperimentReport& report);
/// One line per row: id, session, status, parsed, error.
std::string to_csv(const ExperimentReport& report);
nlohmann::ordered_json config_to_json(const ExperimentRequest& request);
/// Writes config.json, report.json, report.csv and transcripts/<session>.json.
void write_run_directory(const ExperimentReport& report, const nlohmann::ordered_json& config,
                         const std::filesystem::path& dir);

// ---- backends built from the embedded fixtures ---------------------------

// Answers chatOCC prompts by running the OCC engine on the structured frame
// registered for the situation in the prompt.
class EngineBackend : public llm::Backend {
 public:
  explicit EngineBackend(const std::vector<ElicitationCase>& cases, occ::IntensityOptions options = {});

  std::string kind() const override { return "engine"; }
  std::unique_ptr<llm::Conversation> start_conversation() override;

 private:
  std::map<std::string, occ::AppraisalFrame, std::less<>> frames_;
  occ::IntensityOptions options_;
};

/// Scripted backend answering with the published responses for `request`
/// (prediction columns, mapping words, generated situations, labels).
std::unique_ptr<llm::ScriptedBackend> published_responses_backend(const ExperimentRequest& request);
/// Replay fixture recorded from published_responses_backend.
llm::ReplayFixture published_fixture(const ExperimentRequest& request);

/// Runs task(i) for i in [0, count) on at most `parallelism` threads.
void for_each_parallel(std::size_t count, std::size_t parallelism, const std::function<void(std::size_t)>& task);

}  // namespace affect::experiments

#endif  // AFFECTKIT_EXPERIMENTS_HPP_
