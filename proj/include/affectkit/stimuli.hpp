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


#ifndef AFFECTKIT_STIMULI_HPP_
#define AFFECTKIT_STIMULI_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affectkit/affect_space.hpp"
#include "affectkit/occ.hpp"

namespace affect {

enum class StimulusKind { situation, word };

std::string_view to_string(StimulusKind kind) noexcept;
StimulusKind parse_stimulus_kind(std::string_view name);

/// Per-dimension standard deviations of the human ratings, on the same scale
/// as the ground truth.
struct SdTriple {
  double v = 0.0;
  double a = 0.0;
  double d = 0.0;
};

struct Stimulus {
  std::string id;  // ANET number, or the word itself for word stimuli
  StimulusKind kind;
  std::string text;
  VadTriple ground_truth;
  std::optional<SdTriple> sd;
};

// An ordered, non-empty set of stimuli sharing one kind and one scale.
class Dataset {
 public:
  Dataset(std::string name, StimulusKind kind, Scale scale, std::vector<Stimulus> items);

  const std::string& name() const noexcept { return name_; }
  StimulusKind kind() const noexcept { return kind_; }
  Scale scale() const noexcept { return scale_; }
  const std::vector<Stimulus>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }

  bool contains(std::string_view id) const noexcept;
  const Stimulus& find(std::string_view id) const;
  std::vector<std::string> texts() const;
  std::vector<std::string> ids() const;

 private:
  std::string name_;
  StimulusKind kind_;
  Scale scale_;
  std::vector<Stimulus> items_;
};

enum class PredictionVariant { normal, failed_dominance };

struct PredictionRecord {
  std::string stimulus_id;
  VadTriple vad;  // unit_0_1
  PredictionVariant variant = PredictionVariant::normal;
};

/// sd_v^2 + sd_a^2 + sd_d^2; lower is more reliable. Throws when sd is absent.
double reliability_score(const Stimulus& s);

/// The k lowest-scoring items, sorted by score then id.
Dataset select_most_reliable(const Dataset& d, std::size_t k);

// CSV format:
//   #name=<name>        (optional)
//   #kind=situation|word (optional, default situation)
//   #scale=<scale>      (required)
//   id,text,v,a,d[,sd_v,sd_a,sd_d]
Dataset load_dataset_csv(std::string_view csv_text, std::string_view fallback_name = "dataset");
Dataset load_dataset_csv_file(const std::filesystem::path& path);
/// Canonical serialization; load_dataset_csv(to_csv(d)) reproduces d and a
/// canonical file survives load + serialize byte-for-byte.
std::string to_csv(const Dataset& d);

// ---- embedded fixtures ---------------------------------------------------

struct WordMappingRow {
  std::string situation_id;
  std::string numeric_word;     // word chosen from the numeric representation
  double numeric_distance;      // as printed
  std::size_t numeric_rank;     // as printed; from a session that is not published
  std::string free_mapping;     // raw cell text, e.g. "serious (alert), suspicious"
  std::string expert_mapping;   // raw cell text, e.g. "alert, activated"
};

struct OctantRow {
  Octant octant;
  std::string prompt_label;
  std::string generated_situation;
  std::string rating;  // verbatim, including the printed "V-A-A+"
};

struct ElicitationCase {
  std::string table_label;  // e.g. "Satisfac.", "Disapp."
  occ::EmotionLabel expected;
  std::string rule_text;
  std::string situation;
  std::string reported_prediction;
  occ::AppraisalFrame frame;
};

struct FixtureBundle {
  Dataset anet20;
  Dataset words20;
  std::vector<PredictionRecord> anet20_predictions;
  std::vector<PredictionRecord> anet20_failed_dominance;
  std::vector<PredictionRecord> words20_predictions;
  std::vector<WordMappingRow> word_mapping;
  std::vector<OctantRow> octant_generation;
  std::vector<ElicitationCase> elicitation;
};

const FixtureBundle& fixtures();

/// Names accepted by fixture_file(), e.g. "anet20" or "elicitation12_frames".
std::vector<std::string> fixture_names();
std::string_view fixture_file(std::string_view name);

/// Predictions ordered like `d`; throws if a stimulus has no prediction.
std::vector<VadTriple> aligned_predictions(const Dataset& d, const std::vector<PredictionRecord>& predictions);

}  // namespace affect

#endif  // AFFECTKIT_STIMULI_HPP_
