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


#include "affectkit/occ_json.hpp"

#include <algorithm>
#include <string>

#include "affectkit/error.hpp"

namespace affect::occ {

namespace {

std::string required_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::validation, std::string("frame is missing '") + key + "'");
  if (!j.at(key).is_string()) throw Error(ErrorKind::validation, std::string("frame field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

template <typename Enum>
Enum pick(const std::string& value, const char* key, std::initializer_list<std::pair<const char*, Enum>> options) {
  for (const auto& [name, e] : options) {
    if (value == name) return e;
  }
  throw Error(ErrorKind::validation, std::string("frame field '") + key + "' has invalid value '" + value + "'");
}

Ordinal ordinal_field(const nlohmann::json& j, const char* key) {
  return pick<Ordinal>(required_string(j, key), key,
                       {{"low", Ordinal::low}, {"medium", Ordinal::medium}, {"high", Ordinal::high}});
}

const char* name(Desirability d) { return d == Desirability::desirable ? "desirable" : "undesirable"; }

}  // namespace

AppraisalFrame frame_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::validation, "frame must be a JSON object");
  static const std::initializer_list<const char*> kKnown = {
      "subject", "liking", "desirability", "desirability_magnitude", "temporal", "anticipation", "likelihood"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(kKnown.begin(), kKnown.end(), [&](const char* k) { return key == k; }) == kKnown.end()) {
      throw Error(ErrorKind::validation, "frame has unknown field '" + key + "'");
    }
  }

  AppraisalFrame f;
  f.subject = pick<Subject>(required_string(j, "subject"), "subject",
                            {{"self", Subject::self}, {"other", Subject::other}});
  if (j.contains("liking") && !j.at("liking").is_null()) {
    f.liking = pick<Liking>(required_string(j, "liking"), "liking",
                            {{"liked", Liking::liked}, {"disliked", Liking::disliked}});
  }
  f.desirability = pick<Desirability>(required_string(j, "desirability"), "desirability",
                                      {{"desirable", Desirability::desirable},
                                       {"undesirable", Desirability::undesirable}});
  f.desirability_magnitude = ordinal_field(j, "desirability_magnitude");
  f.temporal = pick<Temporal>(required_string(j, "temporal"), "temporal",
                              {{"happened", Temporal::happened}, {"prospective", Temporal::prospective}});
  f.likelihood = ordinal_field(j, "likelihood");

  if (j.contains("anticipation")) {
    const auto& a = j.at("anticipation");
    if (a.is_object()) {
      Anticipation record{};
      record.anticipated_desirability =
          pick<Desirability>(required_string(a, "anticipated_desirability"), "anticipated_desirability",
                             {{"desirable", Desirability::desirable}, {"undesirable", Desirability::undesirable}});
      record.outcome = pick<Outcome>(required_string(a, "outcome"), "outcome",
                                     {{"confirmed", Outcome::confirmed}, {"disconfirmed", Outcome::disconfirmed}});
      f.anticipation = record;
    } else if (!(a.is_null() || (a.is_string() && a.get<std::string>() == "none"))) {
      throw Error(ErrorKind::validation, "frame field 'anticipation' must be \"none\" or an object");
    }
  }
  validate(f);
  return f;
}

nlohmann::ordered_json frame_to_json(const AppraisalFrame& f) {
  nlohmann::ordered_json j;
  j["subject"] = f.subject == Subject::self ? "self" : "other";
  if (f.liking) j["liking"] = *f.liking == Liking::liked ? "liked" : "disliked";
  j["desirability"] = name(f.desirability);
  j["desirability_magnitude"] = to_string(f.desirability_magnitude);
  j["temporal"] = f.temporal == Temporal::happened ? "happened" : "prospective";
  if (f.anticipation) {
    j["anticipation"] = {{"anticipated_desirability", name(f.anticipation->anticipated_desirability)},
                         {"outcome", f.anticipation->outcome == Outcome::confirmed ? "confirmed" : "disconfirmed"}};
  } else {
    j["anticipation"] = "none";
  }
  j["likelihood"] = to_string(f.likelihood);
  return j;
}

nlohmann::ordered_json prediction_to_json(const EmotionPrediction& p, const std::vector<TraceStep>& trace) {
  nlohmann::ordered_json j;
  j["label"] = to_string(p.label);
  j["intensity"] = to_string(p.intensity);
  j["rule_id"] = p.rule_id;
  j["rationale"] = p.rationale;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& step : trace) {
    nlohmann::ordered_json s;
    s["rule_id"] = step.rule_id;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : step.checks) checks.push_back({{"condition", c.description}, {"holds", c.holds}});
    s["conditions"] = std::move(checks);
    s["fired"] = step.fired;
    steps.push_back(std::move(s));
  }
  j["trace"] = std::move(steps);
  return j;
}

}  // namespace affect::occ
