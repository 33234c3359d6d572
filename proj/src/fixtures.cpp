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
#include <string>

#include "affectkit/assets.hpp"
#include "affectkit/csv.hpp"
#include "affectkit/error.hpp"
#include "affectkit/occ_json.hpp"
#include "affectkit/stimuli.hpp"
#include "affectkit/text.hpp"

namespace affect {

namespace {

constexpr std::string_view kFixtureDir = "fixtures/";

std::vector<csv::Record> table(std::string_view asset, const std::vector<std::string>& header) {
  auto doc = csv::parse(assets::get(asset));
  if (doc.records.empty() || doc.records.front().fields != header) {
    throw Error(ErrorKind::parse, "embedded fixture " + std::string(asset) + " has an unexpected header");
  }
  doc.records.erase(doc.records.begin());
  return std::move(doc.records);
}

double number(const csv::Record& r, std::size_t column) {
  const auto value = text::parse_number(r.fields.at(column));
  if (!value) throw ParseError("embedded fixture holds a non-numeric cell", r.line, column + 1);
  return *value;
}

std::vector<PredictionRecord> predictions(const Dataset& d, std::string_view asset, std::vector<std::string> header,
                                          std::size_t dominance_column, PredictionVariant variant) {
  std::vector<PredictionRecord> out;
  for (const auto& r : table(asset, header)) {
    if (!d.contains(r.fields[0])) {
      throw Error(ErrorKind::not_found, "prediction for unknown stimulus '" + r.fields[0] + "'");
    }
    out.push_back({r.fields[0], VadTriple(number(r, 1), number(r, 2), number(r, dominance_column), Scale::unit_0_1),
                   variant});
  }
  return out;
}

FixtureBundle load_fixtures() {
  Dataset anet20 = load_dataset_csv(assets::get("fixtures/anet20.csv"));
  Dataset words20 = load_dataset_csv(assets::get("fixtures/words20.csv"));

  const std::vector<std::string> anet_header = {"id", "v_hat", "a_hat", "d_hat", "d_hat_failed"};
  auto anet_normal = predictions(anet20, "fixtures/anet20_predictions.csv", anet_header, 3, PredictionVariant::normal);
  auto anet_failed =
      predictions(anet20, "fixtures/anet20_predictions.csv", anet_header, 4, PredictionVariant::failed_dominance);
  auto word_preds = predictions(words20, "fixtures/words20_predictions.csv", {"id", "v_hat", "a_hat", "d_hat"}, 3,
                                PredictionVariant::normal);

  std::vector<WordMappingRow> mapping;
  for (const auto& r : table("fixtures/word_mapping.csv", {"id", "numeric_word", "numeric_distance", "numeric_rank",
                                                           "free_mapping", "expert_mapping"})) {
    mapping.push_back({r.fields[0], r.fields[1], number(r, 2), static_cast<std::size_t>(number(r, 3)), r.fields[4],
                       r.fields[5]});
  }

  std::vector<OctantRow> octants;
  for (const auto& r : table("fixtures/octant_generation.csv", {"prompt", "generated_situation", "rating"})) {
    octants.push_back({parse_signature(r.fields[0]), r.fields[0], r.fields[1], r.fields[2]});
  }

  const auto frames = nlohmann::json::parse(assets::get("fixtures/elicitation12_frames.json"));
  std::vector<ElicitationCase> cases;
  const auto rows = table("fixtures/elicitation12.csv", {"emotion", "rule", "situation", "prediction"});
  if (rows.size() != frames.size()) throw Error(ErrorKind::parse, "elicitation fixtures disagree in length");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto expected = occ::parse_label(frames[i].at("emotion").get<std::string>());
    cases.push_back({r.fields[0], expected, r.fields[1], r.fields[2], r.fields[3],
                     occ::frame_from_json(frames[i].at("frame"))});
  }

  return FixtureBundle{std::move(anet20),     std::move(words20), std::move(anet_normal),
                       std::move(anet_failed), std::move(word_preds), std::move(mapping),
                       std::move(octants),     std::move(cases)};
}

}  // namespace

const FixtureBundle& fixtures() {
  static const FixtureBundle kBundle = load_fixtures();
  return kBundle;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (auto name : assets::names()) {
    if (!name.starts_with(kFixtureDir)) continue;
    name.remove_prefix(kFixtureDir.size());
    out.emplace_back(name.substr(0, name.rfind('.')));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view fixture_file(std::string_view name) {
  for (auto asset : assets::names()) {
    if (!asset.starts_with(kFixtureDir)) continue;
    auto stem = asset.substr(kFixtureDir.size());
    stem = stem.substr(0, stem.rfind('.'));
    if (stem == name) return assets::get(asset);
  }
  throw Error(ErrorKind::not_found, "no fixture named '" + std::string(name) + "'");
}

}  // namespace affect
