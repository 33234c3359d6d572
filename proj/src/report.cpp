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


#include <filesystem>
#include <system_error>

#include "affectkit/csv.hpp"
#include "affectkit/error.hpp"
#include "affectkit/experiments.hpp"
#include "affectkit/text.hpp"

namespace affect::experiments {

namespace {

using nlohmann::ordered_json;

ordered_json error_json(const RowError& e) { return {{"kind", to_string(e.kind)}, {"message", e.message}}; }

ordered_json aggregates_json(const Aggregates& a) {
  ordered_json j = ordered_json::object();
  if (!a.correlations.empty()) {
    auto list = ordered_json::array();
    for (const auto& c : a.correlations) {
      ordered_json entry;
      if (c.dimension) entry["dimension"] = to_string(*c.dimension);
      entry["rho"] = c.rho;
      entry["p"] = c.p ? ordered_json(*c.p) : ordered_json(nullptr);
      entry["n"] = c.n;
      list.push_back(std::move(entry));
    }
    j["correlations"] = std::move(list);
  }
  if (!a.rmse.empty()) {
    ordered_json rmse = ordered_json::object();
    for (const auto& [dim, value] : a.rmse) rmse[std::string(to_string(dim))] = value;
    j["rmse"] = std::move(rmse);
  }
  if (!a.ranks.empty()) {
    auto list = ordered_json::array();
    for (const auto& r : a.ranks) {
      ordered_json entry{{"situation", r.situation_id}, {"word", r.word}, {"distance", r.distance}, {"rank", r.rank}};
      if (r.reported_distance) entry["reported_distance"] = *r.reported_distance;
      if (r.reported_rank) entry["reported_rank"] = *r.reported_rank;
      list.push_back(std::move(entry));
    }
    j["ranks"] = std::move(list);
  }
  if (a.tally) {
    j["match_tally"] = {{"complete", a.tally->complete}, {"partial", a.tally->partial}, {"none", a.tally->none}};
    j["hallucinations"] = a.hallucinations;
  }
  if (a.accuracy) {
    j["accuracy"] = {{"correct", a.accuracy->correct},
                     {"total", a.accuracy->total},
                     {"fraction", a.accuracy->fraction()}};
    auto list = ordered_json::array();
    for (const auto& f : a.failures) {
      list.push_back({{"case", f.case_id},
                      {"expected", occ::to_string(f.expected)},
                      {"predicted", f.predicted ? ordered_json(occ::to_string(*f.predicted)) : ordered_json(nullptr)}});
    }
    j["failures"] = std::move(list);
  }
  return j;
}

}  // namespace

ordered_json to_json(const ExperimentReport& report) {
  ordered_json j;
  j["experiment"] = report.experiment;
  j["backend"] = report.backend;
  j["settings"] = report.settings;
  j["sessions"] = report.sessions;
  j["summary"] = {{"rows", report.rows.size()},
                  {"parse_failures", report.parse_failures()},
                  {"backend_failures", report.backend_failures()}};
  j["aggregates"] = aggregates_json(report.aggregates);
  j["notes"] = report.notes;
  auto rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row{{"id", r.id}, {"session", r.session}, {"status", r.error ? "error" : "ok"}};
    row["response"] = r.response;
    row["parsed"] = r.parsed;
    if (r.error) row["error"] = error_json(*r.error);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string canonical_json(const ExperimentReport& report) { return to_json(report).dump(2) + "\n"; }

std::string to_csv(const ExperimentReport& report) {
  std::string out = csv::join_row({"id", "session", "status", "parsed", "error_kind", "error"}) + "\n";
  for (const auto& r : report.rows) {
    out += csv::join_row({r.id, r.session, r.error ? "error" : "ok", r.parsed.is_null() ? "" : r.parsed.dump(),
                          r.error ? std::string(to_string(r.error->kind)) : "", r.error ? r.error->message : ""});
    out += "\n";
  }
  return out;
}

ordered_json config_to_json(const ExperimentRequest& request) {
  const auto& c = request.config;
  ordered_json j;
  j["experiment"] = to_string(request.id);
  if (request.dataset) j["dataset"] = request.dataset->name();
  j["batch_size"] = c.batch_size;
  j["parallelism"] = c.parallelism;
  j["dominance_clause"] = c.dominance_clause;
  j["neutral_band"] = c.neutral_band;
  j["word_pick"] = c.word_pick == prompts::WordPickVariant::standard ? "standard" : "perspective";
  j["unexpectedness_scaling"] = c.intensity.unexpectedness_scaling;
  j["expert_mapping"] = request.expert ? "side file" : "embedded";
  j["ratings"] = request.ratings.empty() ? "pending" : "side file";
  return j;
}

void write_run_directory(const ExperimentReport& report, const ordered_json& config,
                         const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "transcripts", ec);
  if (ec) throw Error(ErrorKind::io, "cannot create run directory " + dir.string() + ": " + ec.message());
  text::write_file(dir / "config.json", config.dump(2) + "\n");
  text::write_file(dir / "report.json", canonical_json(report));
  text::write_file(dir / "report.csv", to_csv(report));
  for (const auto& t : report.transcripts) {
    text::write_file(dir / "transcripts" / (t.at("session_id").get<std::string>() + ".json"), t.dump(2) + "\n");
  }
}

}  // namespace affect::experiments
