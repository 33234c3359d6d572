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


#ifndef AFFECTKIT_OCC_JSON_HPP_
#define AFFECTKIT_OCC_JSON_HPP_

#include "affectkit/occ.hpp"
#include "json.hpp"

// JSON form of frames and predictions. Field names follow AppraisalFrame;
// "anticipation" is the string "none" or an object, "liking" is omitted for
// self frames.
namespace affect::occ {

AppraisalFrame frame_from_json(const nlohmann::json& j);
nlohmann::ordered_json frame_to_json(const AppraisalFrame& frame);
nlohmann::ordered_json prediction_to_json(const EmotionPrediction& prediction,
                                          const std::vector<TraceStep>& trace);

}  // namespace affect::occ

#endif  // AFFECTKIT_OCC_JSON_HPP_
