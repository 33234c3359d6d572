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


#include "affectkit/occ.hpp"

#include <algorithm>

#include "affectkit/error.hpp"
#include "affectkit/text.hpp"

namespace affect::occ {

namespace {

Condition subject_is(Subject s) {
  return {s == Subject::self ? "subject = self" : "subject = other",
          [s](const AppraisalFrame& f) { return f.subject == s; }};
}

Condition liking_is(Liking l) {
  return {l == Liking::liked ? "liking = liked" : "liking = disliked",
          [l](const AppraisalFrame& f) { return f.liking == l; }};
}

Condition desirability_is(Desirability d) {
  return {d == Desirability::desirable ? "desirability = desirable" : "desirability = undesirable",
          [d](const AppraisalFrame& f) { return f.desirability == d; }};
}

Condition temporal_is(Temporal t) {
  return {t == Temporal::happened ? "temporal = happened" : "temporal = prospective",
          [t](const AppraisalFrame& f) { return f.temporal == t; }};
}

Condition anticipated_is(Desirability d) {
  return {d == Desirability::desirable ? "anticipated_desirability = desirable"
                                       : "anticipated_desirability = undesirable",
          [d](const AppraisalFrame& f) { return f.anticipation && f.anticipation->anticipated_desirability == d; }};
}

Condition outcome_is(Outcome o) {
  return {o == Outcome::confirmed ? "outcome = confirmed" : "outcome = disconfirmed",
          [o](const AppraisalFrame& f) { return f.anticipation && f.anticipation->outcome == o; }};
}

std::vector<EmotionRule> build_rules() {
  using D = Desirability;
  std::vector<EmotionRule> rules;
  auto add = [&](std::string id, EmotionLabel label, std::string text, std::vector<Condition> conditions) {
    rules.push_back({std::move(id), label, std::move(text), std::move(conditions)});
  };

  add("satisfaction", EmotionLabel::Satisfaction, "An anticipated desirable event for Anne has indeed happened.",
      {anticipated_is(D::desirable), outcome_is(Outcome::confirmed)});
  add("despair", EmotionLabel::Despair, "An anticipated undesirable event for Anne has indeed happened.",
      {anticipated_is(D::undesirable), outcome_is(Outcome::confirmed)});
  add("relief", EmotionLabel::Relief, "An anticipated undesirable event for Anne did not happen.",
      {anticipated_is(D::undesirable), outcome_is(Outcome::disconfirmed)});
  add("disappointment", EmotionLabel::Disappointment, "An anticipated desirable event for Anne did not happen.",
      {anticipated_is(D::desirable), outcome_is(Outcome::disconfirmed)});

  add("happy_for", EmotionLabel::HappyFor, "a desirable event for a friend of Anne just happened",
      {subject_is(Subject::other), liking_is(Liking::liked), desirability_is(D::desirable)});
  add("pity", EmotionLabel::Pity, "an undesirable event for a friend of Anne just happened",
      {subject_is(Subject::other), liking_is(Liking::liked), desirability_is(D::undesirable)});
  add("gloating", EmotionLabel::Gloating, "an undesirable event for an enemy of Anne just happened",
      {subject_is(Subject::other), liking_is(Liking::disliked), desirability_is(D::undesirable)});
  add("resentment", EmotionLabel::Resentment, "a desirable event for an enemy of Anne just happened.",
      {subject_is(Subject::other), liking_is(Liking::disliked), desirability_is(D::desirable)});

  add("hope", EmotionLabel::Hope, "a desirable event for Anne might happen in the future.",
      {subject_is(Subject::self), temporal_is(Temporal::prospective), desirability_is(D::desirable)});
  add("fear", EmotionLabel::Fear, "an undesirable event for Anne might happen in the future.",
      {subject_is(Subject::self), temporal_is(Temporal::prospective), desirability_is(D::undesirable)});

  add("joy", EmotionLabel::Joy, "a desirable event for Anne just happened",
      {subject_is(Subject::self), temporal_is(Temporal::happened), desirability_is(D::desirable)});
  add("distress", EmotionLabel::Distress, "an undesirable event for Anne just happened",
      {subject_is(Subject::self), temporal_is(Temporal::happened), desirability_is(D::undesirable)});
  return rules;
}

}  // namespace

void validate(const AppraisalFrame& frame) {
  if (frame.subject == Subject::other && !frame.liking) {
    throw Error(ErrorKind::validation, "liking is required when subject = other");
  }
  if (frame.subject == Subject::self && frame.liking) {
    throw Error(ErrorKind::validation, "liking applies only when subject = other");
  }
  if (frame.anticipation && frame.temporal == Temporal::prospective) {
    throw Error(ErrorKind::validation, "prospective events cannot carry an anticipation record");
  }
  if (frame.anticipation && frame.subject == Subject::other) {
    throw Error(ErrorKind::validation, "events of other people cannot carry an anticipation record");
  }
}

std::string_view to_string(EmotionLabel label) noexcept {
  switch (label) {
    case EmotionLabel::Joy: return "Joy";
    case EmotionLabel::Distress: return "Distress";
    case EmotionLabel::HappyFor: return "HappyFor";
    case EmotionLabel::Pity: return "Pity";
    case EmotionLabel::Gloating: return "Gloating";
    case EmotionLabel::Resentment: return "Resentment";
    case EmotionLabel::Hope: return "Hope";
    case EmotionLabel::Fear: return "Fear";
    case EmotionLabel::Satisfaction: return "Satisfaction";
    case EmotionLabel::Despair: return "Despair";
    case EmotionLabel::Relief: return "Relief";
    case EmotionLabel::Disappointment: return "Disappointment";
  }
  return "?";
}

std::string_view display_name(EmotionLabel label) noexcept {
  return label == EmotionLabel::HappyFor ? "Happy for" : to_string(label);
}

EmotionLabel parse_label(std::string_view name) {
  const auto wanted = text::to_lower(text::trim(name));
  for (auto label : kAllLabels) {
    if (wanted == text::to_lower(to_string(label)) || wanted == text::to_lower(display_name(label))) return label;
  }
  throw Error(ErrorKind::invalid_argument, "unknown emotion label '" + std::string(name) + "'");
}

std::string_view to_string(Ordinal o) noexcept {
  switch (o) {
    case Ordinal::low: return "low";
    case Ordinal::medium: return "medium";
    case Ordinal::high: return "high";
  }
  return "?";
}

Ordinal parse_ordinal(std::string_view name) {
  const auto wanted = text::to_lower(text::trim(name));
  for (auto o : {Ordinal::low, Ordinal::medium, Ordinal::high}) {
    if (wanted == to_string(o)) return o;
  }
  throw Error(ErrorKind::invalid_argument, "unknown ordinal '" + std::string(name) + "'");
}

bool EmotionRule::matches(const AppraisalFrame& frame) const {
  return std::all_of(conditions.begin(), conditions.end(), [&](const Condition& c) { return c.holds(frame); });
}

const std::vector<EmotionRule>& rule_set() {
  static const std::vector<EmotionRule> kRules = build_rules();
  return kRules;
}

std::vector<EmotionRule> rules_in_presentation_order() {
  std::vector<EmotionRule> out;
  out.reserve(kAllLabels.size());
  for (auto label : kAllLabels) out.push_back(rule_for(label));
  return out;
}

const EmotionRule& rule_for(EmotionLabel label) {
  const auto& rules = rule_set();
  const auto it = std::find_if(rules.begin(), rules.end(), [&](const EmotionRule& r) { return r.label == label; });
  return *it;  // every label has exactly one rule
}

Ordinal intensity(const AppraisalFrame& frame, const IntensityOptions& options) {
  const int magnitude = static_cast<int>(frame.desirability_magnitude);
  const int likelihood = static_cast<int>(frame.likelihood);
  int level = (magnitude + likelihood) / 2;
  if (options.unexpectedness_scaling && frame.anticipation &&
      frame.anticipation->outcome == Outcome::disconfirmed) {
    level = std::max(level, likelihood);
  }
  return static_cast<Ordinal>(level);
}

EmotionPrediction appraise(const AppraisalFrame& frame, const IntensityOptions& options) {
  validate(frame);
  for (const auto& rule : rule_set()) {
    if (!rule.matches(frame)) continue;
    std::string rationale = "Rule " + std::string(display_name(rule.label)) + " matches: " + rule.text;
    if (rationale.back() != '.') rationale.push_back('.');
    rationale += " (";
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
      if (i > 0) rationale += ", ";
      rationale += rule.conditions[i].description;
    }
    rationale += ")";
    return {rule.label, intensity(frame, options), rule.id, std::move(rationale)};
  }
  // Unreachable for validated frames; the rule space is exhaustive.
  throw Error(ErrorKind::validation, "no emotion rule applies to this frame");
}

std::vector<TraceStep> explain(const AppraisalFrame& frame) {
  validate(frame);
  std::vector<TraceStep> trace;
  for (const auto& rule : rule_set()) {
    TraceStep step{rule.id, rule.label, {}, false};
    for (const auto& c : rule.conditions) step.checks.push_back({c.description, c.holds(frame)});
    step.fired = rule.matches(frame);
    trace.push_back(std::move(step));
    if (trace.back().fired) break;
  }
  return trace;
}

int frame_valence(const AppraisalFrame& frame) {
  if (frame.anticipation) {
    const bool good = frame.anticipation->anticipated_desirability == Desirability::desirable;
    const bool confirmed = frame.anticipation->outcome == Outcome::confirmed;
    return good == confirmed ? 1 : -1;
  }
  const bool desirable = frame.desirability == Desirability::desirable;
  if (frame.subject == Subject::other && frame.liking == Liking::disliked) return desirable ? -1 : 1;
  return desirable ? 1 : -1;
}

}  // namespace affect::occ
