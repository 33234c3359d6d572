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


#ifndef AFFECTKIT_OCC_HPP_
#define AFFECTKIT_OCC_HPP_

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Event branch of the OCC appraisal model, evaluated symbolically.
//
// Twelve rules cover well-being (Joy, Distress), fortunes-of-others
// (HappyFor, Pity, Gloating, Resentment), prospect (Hope, Fear) and
// confirmation of prospects (Satisfaction, Despair, Relief, Disappointment).
// Several rules can hold for the same frame (an anticipated failure that
// happened is also a plain undesirable event), so rules are tried in a fixed
// specificity order and the first one that holds fires.
namespace affect::occ {

enum class Ordinal { low = 1, medium = 2, high = 3 };

enum class Subject { self, other };
enum class Liking { liked, disliked };
enum class Desirability { desirable, undesirable };
enum class Temporal { happened, prospective };
enum class Outcome { confirmed, disconfirmed };

struct Anticipation {
  Desirability anticipated_desirability;
  Outcome outcome;

  friend bool operator==(const Anticipation&, const Anticipation&) = default;
};

// The appraisal of one event from the perspective of one person.
struct AppraisalFrame {
  Subject subject = Subject::self;
  std::optional<Liking> liking;  // present iff subject == other
  Desirability desirability = Desirability::desirable;
  Ordinal desirability_magnitude = Ordinal::medium;
  Temporal temporal = Temporal::happened;
  std::optional<Anticipation> anticipation;  // only for happened, self events
  Ordinal likelihood = Ordinal::medium;

  friend bool operator==(const AppraisalFrame&, const AppraisalFrame&) = default;
};

/// Throws Error(validation) naming the first violated invariant.
void validate(const AppraisalFrame& frame);

enum class EmotionLabel {
  Joy,
  Distress,
  HappyFor,
  Pity,
  Gloating,
  Resentment,
  Hope,
  Fear,
  Satisfaction,
  Despair,
  Relief,
  Disappointment,
};

inline constexpr std::array<EmotionLabel, 12> kAllLabels = {
    EmotionLabel::Joy,        EmotionLabel::Distress, EmotionLabel::HappyFor,     EmotionLabel::Pity,
    EmotionLabel::Gloating,   EmotionLabel::Resentment, EmotionLabel::Hope,       EmotionLabel::Fear,
    EmotionLabel::Satisfaction, EmotionLabel::Despair, EmotionLabel::Relief,      EmotionLabel::Disappointment,
};

/// Identifier form, e.g. "HappyFor".
std::string_view to_string(EmotionLabel label) noexcept;
/// Human form used in prompts, e.g. "Happy for".
std::string_view display_name(EmotionLabel label) noexcept;
EmotionLabel parse_label(std::string_view name);

std::string_view to_string(Ordinal o) noexcept;
Ordinal parse_ordinal(std::string_view name);

struct Condition {
  std::string description;  // e.g. "subject = other"
  std::function<bool(const AppraisalFrame&)> holds;
};

struct EmotionRule {
  std::string id;  // e.g. "happy_for"
  EmotionLabel label;
  std::string text;  // rule wording, from Anne's perspective
  std::vector<Condition> conditions;

  bool matches(const AppraisalFrame& frame) const;
};

/// Rules in specificity order: confirmation of prospects, fortunes of
/// others, prospect, well-being.
const std::vector<EmotionRule>& rule_set();

/// The same rules listed Joy first, the order used when presenting them.
std::vector<EmotionRule> rules_in_presentation_order();

const EmotionRule& rule_for(EmotionLabel label);

struct IntensityOptions {
  // When set, a disconfirmed prospect never feels weaker than the
  // expectation it overturned: intensity = max(base, likelihood).
  bool unexpectedness_scaling = false;
};

struct EmotionPrediction {
  EmotionLabel label;
  Ordinal intensity;
  std::string rule_id;
  std::string rationale;
};

/// floor((desirability_magnitude + likelihood) / 2) with low=1..high=3.
/// For Relief/Disappointment the likelihood is that of the anticipated event.
Ordinal intensity(const AppraisalFrame& frame, const IntensityOptions& options = {});

EmotionPrediction appraise(const AppraisalFrame& frame, const IntensityOptions& options = {});

struct ConditionCheck {
  std::string description;
  bool holds;
};

struct TraceStep {
  std::string rule_id;
  EmotionLabel label;
  std::vector<ConditionCheck> checks;
  bool fired;
};

/// Every rule evaluated before and including the one that fires.
std::vector<TraceStep> explain(const AppraisalFrame& frame);

/// +1 when the event is good news for the appraising person (desirable for
/// self or a friend, undesirable for an enemy, an anticipated good event
/// confirmed or a feared one disconfirmed), -1 otherwise.
int frame_valence(const AppraisalFrame& frame);

}  // namespace affect::occ

#endif  // AFFECTKIT_OCC_HPP_
