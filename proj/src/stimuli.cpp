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


#include "affectkit/stimuli.hpp"

#include <algorithm>
#include <set>

#include "affectkit/csv.hpp"
#include "affectkit/error.hpp"
#include "affectkit/text.hpp"

namespace affect {

std::string_view to_string(StimulusKind kind) noexcept {
  return kind == StimulusKind::situation ? "situation" : "word";
}

StimulusKind parse_stimulus_kind(std::string_view name) {
  const auto n = text::trim(name);
  if (n == "situation") return StimulusKind::situation;
  if (n == "word") return StimulusKind::word;
  throw Error(ErrorKind::invalid_argument, "unknown stimulus kind '" + std::string(name) + "'");
}

Dataset::Dataset(std::string name, StimulusKind kind, Scale scale, std::vector<Stimulus> items)
    : name_(std::move(name)), kind_(kind), scale_(scale), items_(std::move(items)) {
  if (items_.empty()) throw Error(ErrorKind::invalid_argument, "dataset '" + name_ + "' has no items");
  std::set<std::string_view> seen;
  for (const auto& s : items_) {
    if (s.kind != kind_) throw Error(ErrorKind::invalid_argument, "stimulus '" + s.id + "' has the wrong kind");
    if (s.ground_truth.scale() != scale_) {
      throw Error(ErrorKind::scale_mismatch, "stimulus '" + s.id + "' is not on the dataset scale");
    }
    if (s.sd && (s.sd->v < 0 || s.sd->a < 0 || s.sd->d < 0)) {
      throw Error(ErrorKind::out_of_range, "stimulus '" + s.id + "' has a negative standard deviation");
    }
    if (!seen.insert(s.id).second) throw Error(ErrorKind::duplicate, "duplicate stimulus id '" + s.id + "'");
  }
}

bool Dataset::contains(std::string_view id) const noexcept {
  return std::any_of(items_.begin(), items_.end(), [&](const Stimulus& s) { return s.id == id; });
}

const Stimulus& Dataset::find(std::string_view id) const {
  const auto it = std::find_if(items_.begin(), items_.end(), [&](const Stimulus& s) { return s.id == id; });
  if (it == items_.end()) throw Error(ErrorKind::not_found, "no stimulus '" + std::string(id) + "' in " + name_);
  return *it;
}

std::vector<std::string> Dataset::texts() const {
  std::vector<std::string> out;
  for (const auto& s : items_) out.push_back(s.text);
  return out;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  for (const auto& s : items_) out.push_back(s.id);
  return out;
}

double reliability_score(const Stimulus& s) {
  if (!s.sd) throw Error(ErrorKind::invalid_argument, "stimulus '" + s.id + "' has no standard deviations");
  return s.sd->v * s.sd->v + s.sd->a * s.sd->a + s.sd->d * s.sd->d;
}

Dataset select_most_reliable(const Dataset& d, std::size_t k) {
  if (k == 0 || k > d.size()) {
    throw Error(ErrorKind::invalid_argument,
                "cannot select " + std::to_string(k) + " of " + std::to_string(d.size()) + " items");
  }
  std::vector<std::pair<double, const Stimulus*>> scored;
  scored.reserve(d.size());
  for (const auto& s : d.items()) scored.emplace_back(reliability_score(s), &s);
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second->id < y.second->id;
  });
  std::vector<Stimulus> picked;
  picked.reserve(k);
  for (std::size_t i = 0; i < k; ++i) picked.push_back(*scored[i].second);
  return Dataset(d.name(), d.kind(), d.scale(), std::move(picked));
}

namespace {

const std::vector<std::string> kBaseHeader = {"id", "text", "v", "a", "d"};
const std::vector<std::string> kSdHeader = {"id", "text", "v", "a", "d", "sd_v", "sd_a", "sd_d"};

double number_at(const csv::Record& r, std::size_t column, const std::vector<std::string>& header) {
  const auto value = text::parse_number(r.fields[column]);
  if (!value) {
    throw ParseError("row " + std::to_string(r.line) + ": column '" + header[column] + "' is not a number: '" +
                         r.fields[column] + "'",
                     r.line, column + 1);
  }
  return *value;
}

}  // namespace

Dataset load_dataset_csv(std::string_view csv_text, std::string_view fallback_name) {
  const auto doc = csv::parse(csv_text);
  std::string name(fallback_name);
  StimulusKind kind = StimulusKind::situation;
  std::optional<Scale> scale;
  for (const auto& [line, comment] : doc.comments) {
    const auto eq = comment.find('=');
    if (eq == std::string::npos) continue;
    const auto key = text::trim(std::string_view(comment).substr(0, eq));
    const auto value = text::trim(std::string_view(comment).substr(eq + 1));
    try {
      if (key == "name") name = std::string(value);
      else if (key == "kind") kind = parse_stimulus_kind(value);
      else if (key == "scale") scale = parse_scale(value);
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what(), line, 0);
    }
  }
  if (!scale) throw ParseError("missing '#scale=' header", 1, 0);
  if (doc.records.empty()) throw ParseError("missing column header row", 1, 0);

  const auto& header = doc.records.front();
  const bool with_sd = header.fields == kSdHeader;
  if (!with_sd && header.fields != kBaseHeader) {
    throw ParseError("header must be 'id,text,v,a,d' optionally followed by 'sd_v,sd_a,sd_d'", header.line, 0);
  }
  if (doc.records.size() == 1) throw ParseError("no items", header.line, 0);

  std::vector<Stimulus> items;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < doc.records.size(); ++i) {
    const auto& r = doc.records[i];
    if (r.fields.size() != header.fields.size()) {
      throw ParseError("row " + std::to_string(r.line) + ": expected " + std::to_string(header.fields.size()) +
                           " fields, found " + std::to_string(r.fields.size()),
                       r.line, 0);
    }
    const std::string id(text::trim(r.fields[0]));
    if (id.empty()) throw ParseError("row " + std::to_string(r.line) + ": empty id", r.line, 1);
    if (!seen.insert(id).second) {
      throw ParseError("row " + std::to_string(r.line) + ": duplicate id '" + id + "'", r.line, 1);
    }
    const double v = number_at(r, 2, header.fields);
    const double a = number_at(r, 3, header.fields);
    const double d = number_at(r, 4, header.fields);
    std::optional<VadTriple> truth;
    try {
      truth.emplace(v, a, d, *scale);
    } catch (const Error& e) {
      throw ParseError("row " + std::to_string(r.line) + ": " + e.what(), r.line, 0);
    }
    std::optional<SdTriple> sd;
    if (with_sd) {
      sd = SdTriple{number_at(r, 5, header.fields), number_at(r, 6, header.fields), number_at(r, 7, header.fields)};
      if (sd->v < 0 || sd->a < 0 || sd->d < 0) {
        throw ParseError("row " + std::to_string(r.line) + ": negative standard deviation", r.line, 0);
      }
    }
    items.push_back({id, kind, r.fields[1], *truth, sd});
  }
  return Dataset(std::move(name), kind, *scale, std::move(items));
}

Dataset load_dataset_csv_file(const std::filesystem::path& path) {
  return load_dataset_csv(text::read_file(path), path.stem().string());
}

std::string to_csv(const Dataset& d) {
  const bool with_sd = std::all_of(d.items().begin(), d.items().end(), [](const Stimulus& s) { return s.sd.has_value(); });
  std::string out;
  out += "#name=" + d.name() + "\n";
  out += "#kind=" + std::string(to_string(d.kind())) + "\n";
  out += "#scale=" + std::string(to_string(d.scale())) + "\n";
  out += csv::join_row(with_sd ? kSdHeader : kBaseHeader) + "\n";
  for (const auto& s : d.items()) {
    std::vector<std::string> row = {s.id, s.text, text::format_number(s.ground_truth.v()),
                                    text::format_number(s.ground_truth.a()), text::format_number(s.ground_truth.d())};
    if (with_sd) {
      row.push_back(text::format_number(s.sd->v));
      row.push_back(text::format_number(s.sd->a));
      row.push_back(text::format_number(s.sd->d));
    }
    out += csv::join_row(row) + "\n";
  }
  return out;
}

std::vector<VadTriple> aligned_predictions(const Dataset& d, const std::vector<PredictionRecord>& predictions) {
  std::vector<VadTriple> out;
  out.reserve(d.size());
  for (const auto& s : d.items()) {
    const auto it = std::find_if(predictions.begin(), predictions.end(),
                                 [&](const PredictionRecord& p) { return p.stimulus_id == s.id; });
    if (it == predictions.end()) throw Error(ErrorKind::not_found, "no prediction for stimulus '" + s.id + "'");
    out.push_back(it->vad);
  }
  return out;
}

}  // namespace affect
