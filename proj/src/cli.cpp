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


#include "affectkit/cli.hpp"

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "affectkit/csv.hpp"
#include "affectkit/error.hpp"
#include "affectkit/experiments.hpp"
#include "affectkit/llm.hpp"
#include "affectkit/metrics.hpp"
#include "affectkit/occ_json.hpp"
#include "affectkit/stimuli.hpp"
#include "affectkit/text.hpp"

namespace affect::cli {

namespace {

namespace ex = experiments;

struct RunOptions {
  std::string experiment;
  std::string dataset = "anet20";
  std::string backend = "replay";
  std::string fixtures = "published";
  std::optional<std::string> mock_reply;
  std::string out_dir;
  std::size_t parallelism = 1;
  bool no_dominance_clause = false;
  double neutral_band = kDefaultNeutralBand;
  std::string expert;
  std::string ratings;
  bool perspective = false;
  bool unexpectedness_scaling = false;
  // record only
  std::string model = "unknown";
  std::string captured;
};

void add_experiment_options(CLI::App& cmd, RunOptions& o) {
  cmd.add_option("experiment", o.experiment, "rq1, rq2-numeric (rq2.1), rq2-latent (rq2.2), rq2-generate (rq2.3), rq3")
      ->required();
  cmd.add_option("--dataset", o.dataset, "anet20, words20 or a dataset CSV file (rq1)")->capture_default_str();
  cmd.add_option("--mock-reply", o.mock_reply, "Reply sent by the mock backend");
  cmd.add_option("--parallelism", o.parallelism, "Concurrent sessions")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_flag("--no-dominance-clause", o.no_dominance_clause, "Omit the dominance reminder from prompt 1");
  cmd.add_option("--neutral-band", o.neutral_band, "Half-width of the neutral band on the unit scale")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.49999));
  cmd.add_option("--expert", o.expert, "Expert mapping CSV (id,expert_mapping) for rq2-latent")
      ->check(CLI::ExistingFile);
  cmd.add_option("--ratings", o.ratings, "Ratings CSV (prompt,rating) for rq2-generate")->check(CLI::ExistingFile);
  cmd.add_flag("--perspective", o.perspective, "Ask for the individual's feeling in prompt 3");
  cmd.add_flag("--unexpectedness-scaling", o.unexpectedness_scaling,
               "Disconfirmed prospects feel at least as strong as their likelihood");
}

ex::ExperimentRequest make_request(const RunOptions& o) {
  ex::ExperimentRequest request;
  request.id = ex::parse_experiment_id(o.experiment);
  request.config.parallelism = o.parallelism;
  request.config.dominance_clause = !o.no_dominance_clause;
  request.config.neutral_band = o.neutral_band;
  request.config.word_pick = o.perspective ? prompts::WordPickVariant::perspective : prompts::WordPickVariant::standard;
  request.config.intensity.unexpectedness_scaling = o.unexpectedness_scaling;
  const auto& f = fixtures();
  if (o.dataset == f.anet20.name()) {
    request.dataset = f.anet20;
  } else if (o.dataset == f.words20.name()) {
    request.dataset = f.words20;
  } else {
    request.dataset = load_dataset_csv_file(o.dataset);
  }
  if (!o.expert.empty()) request.expert = ex::load_expert_mapping(o.expert, f.words20);
  if (!o.ratings.empty()) request.ratings = ex::load_ratings(o.ratings);
  return request;
}

// Owns the backend chosen on the command line and whatever it depends on.
struct BackendHolder {
  std::shared_ptr<const llm::ReplayFixture> fixture;
  std::unique_ptr<llm::Backend> backend;
};

BackendHolder make_backend(const RunOptions& o, const ex::ExperimentRequest& request, bool allow_published) {
  BackendHolder h;
  if (o.backend == "replay") {
    if (o.fixtures == "published") {
      h.fixture = std::make_shared<llm::ReplayFixture>(ex::published_fixture(request));
    } else {
      h.fixture = std::make_shared<llm::ReplayFixture>(llm::load_replay_fixture(o.fixtures));
    }
    h.backend = std::make_unique<llm::ReplayBackend>(h.fixture);
  } else if (o.backend == "mock") {
    if (!o.mock_reply) throw Error(ErrorKind::configuration, "the mock backend needs --mock-reply");
    h.backend = llm::ScriptedBackend::fixed(*o.mock_reply);
  } else if (o.backend == "http") {
    h.backend = std::make_unique<llm::HttpBackend>(llm::http_config_from_env());
  } else if (o.backend == "engine") {
    if (request.id != ex::ExperimentId::rq3) {
      throw Error(ErrorKind::configuration, "the engine backend only answers rq3");
    }
    h.backend = std::make_unique<ex::EngineBackend>(fixtures().elicitation, request.config.intensity);
  } else if (allow_published && o.backend == "published") {
    h.backend = ex::published_responses_backend(request);
  } else {
    throw Error(ErrorKind::configuration, "unknown backend '" + o.backend + "'");
  }
  return h;
}

int exit_status(const ex::ExperimentReport& report, std::ostream& err) {
  if (report.backend_failures() > 0) {
    err << report.backend_failures() << " row(s) failed in the backend\n";
    return kExitError;
  }
  if (report.parse_failures() > 0) {
    err << report.parse_failures() << " row(s) could not be parsed\n";
    return kExitParseFailures;
  }
  return kExitOk;
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const auto request = make_request(o);
  auto holder = make_backend(o, request, false);
  const auto report = ex::run(request, *holder.backend);
  if (!o.out_dir.empty()) {
    auto config = ex::config_to_json(request);
    config["backend"] = o.backend;
    if (o.backend == "replay") config["fixtures"] = o.fixtures;
    ex::write_run_directory(report, config, o.out_dir);
  }
  out << ex::canonical_json(report);
  return exit_status(report, err);
}

int cmd_record(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const auto request = make_request(o);
  auto holder = make_backend(o, request, true);
  const auto captured = o.captured.empty() ? llm::utc_timestamp().substr(0, 10) : o.captured;
  llm::RecordingBackend recorder(*holder.backend, o.model, captured);
  const auto report = ex::run(request, recorder);
  const auto fixture = recorder.fixture();
  llm::save_replay_fixture(fixture, o.out_dir);
  out << "recorded " << fixture.sessions.size() << " session(s) to " << o.out_dir << "\n";
  return exit_status(report, err);
}

int cmd_appraise(const std::string& path, bool scaling, std::ostream& out) {
  const auto source = path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : text::read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, "frame file is not valid JSON: " + std::string(e.what()));
  }
  const auto frame = occ::frame_from_json(j);
  occ::validate(frame);
  occ::IntensityOptions options;
  options.unexpectedness_scaling = scaling;
  out << occ::prediction_to_json(occ::appraise(frame, options), occ::explain(frame)).dump(2) << "\n";
  return kExitOk;
}

// "<file or fixture name>:<column>"
std::vector<std::pair<std::string, double>> read_column(const std::string& spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw Error(ErrorKind::invalid_argument, "column spec '" + spec + "' must look like FILE:COLUMN");
  }
  const auto source = spec.substr(0, colon);
  const auto column = spec.substr(colon + 1);
  const auto body = std::filesystem::exists(source) ? text::read_file(source) : std::string(fixture_file(source));
  const auto doc = csv::parse(body);
  if (doc.records.empty()) throw Error(ErrorKind::parse, source + " has no header");
  const auto& header = doc.records.front().fields;
  const auto col = std::find(header.begin(), header.end(), column);
  if (col == header.end()) throw Error(ErrorKind::not_found, source + " has no column '" + column + "'");
  const auto id = std::find(header.begin(), header.end(), "id");
  std::vector<std::pair<std::string, double>> values;
  for (std::size_t i = 1; i < doc.records.size(); ++i) {
    const auto& r = doc.records[i];
    const auto c = static_cast<std::size_t>(col - header.begin());
    if (c >= r.fields.size()) throw ParseError(source + ": missing cell", r.line, c + 1);
    const auto value = text::parse_number(r.fields[c]);
    if (!value) throw ParseError(source + ": '" + r.fields[c] + "' is not a number", r.line, c + 1);
    const auto key = id == header.end() ? std::to_string(i) : r.fields.at(static_cast<std::size_t>(id - header.begin()));
    values.emplace_back(key, *value);
  }
  return values;
}

int cmd_stats(const std::string& x_spec, const std::string& y_spec, const std::string& x_scale,
              const std::string& y_scale, std::ostream& out) {
  const auto xs_raw = read_column(x_spec);
  const auto ys_raw = read_column(y_spec);
  if (xs_raw.size() != ys_raw.size()) {
    throw Error(ErrorKind::invalid_argument, "columns differ in length (" + std::to_string(xs_raw.size()) + " vs " +
                                                 std::to_string(ys_raw.size()) + ")");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [key, x] : xs_raw) {
    const auto y = std::find_if(ys_raw.begin(), ys_raw.end(), [&](const auto& p) { return p.first == key; });
    if (y == ys_raw.end()) throw Error(ErrorKind::not_found, "row '" + key + "' missing from " + y_spec);
    xs.push_back(x);
    ys.push_back(y->second);
  }
  const auto r = correlate(xs, ys);
  // RMSE compares values on the unit scale when the scales are given.
  auto to_unit = [](std::vector<double> v, const std::string& scale) {
    if (scale.empty()) return v;
    const auto s = parse_scale(scale);
    for (auto& x : v) x = rescale_value(x, s, Scale::unit_0_1);
    return v;
  };
  const double error = rmse(to_unit(xs, x_scale), to_unit(ys, y_scale));
  out << "n=" << r.n << "\n";
  out << "rho=" << text::format_fixed(r.rho, 4) << "\n";
  if (r.p) out << "p=" << text::format_fixed(*r.p, 4) << "\n";
  out << "rmse=" << text::format_fixed(error, 4) << "\n";
  return kExitOk;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affect analysis toolkit: VAD ratings, word mapping and OCC appraisal experiments"};
  app.name("affectkit");
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run one experiment and print its canonical report");
  add_experiment_options(*run, run_opts);
  run->add_option("--backend", run_opts.backend, "replay, mock, http or engine")->capture_default_str();
  run->add_option("--fixtures", run_opts.fixtures, "Replay source: 'published' or a replay fixture JSON file")
      ->capture_default_str();
  run->add_option("--out", run_opts.out_dir, "Run directory for config, transcripts and reports");

  RunOptions record_opts;
  auto* record = app.add_subcommand("record", "Run an experiment and capture its transcripts as a replay fixture");
  add_experiment_options(*record, record_opts);
  record_opts.backend = "http";
  record->add_option("--backend", record_opts.backend, "http, mock, engine or published")->capture_default_str();
  record->add_option("--out", record_opts.out_dir, "Replay fixture JSON to write")->required();
  record->add_option("--model", record_opts.model, "Model name stored in the fixture")->capture_default_str();
  record->add_option("--captured", record_opts.captured, "Capture date stored in the fixture (default: today)");

  std::string frame_path;
  bool scaling = false;
  auto* appraise = app.add_subcommand("appraise", "Appraise a frame JSON file with the OCC engine");
  appraise->add_option("frame", frame_path, "Frame JSON file, or - for stdin")->required();
  appraise->add_flag("--unexpectedness-scaling", scaling,
                     "Disconfirmed prospects feel at least as strong as their likelihood");

  std::string x_spec;
  std::string y_spec;
  std::string x_scale;
  std::string y_scale;
  auto* stats = app.add_subcommand("stats", "Pearson rho, p and RMSE of two numeric columns");
  stats->add_option("x", x_spec, "FILE:COLUMN (FILE may be an embedded fixture name)")->required();
  stats->add_option("y", y_spec, "FILE:COLUMN")->required();
  stats->add_option("--x-scale", x_scale, "Scale of x, rescaled to unit_0_1 for RMSE");
  stats->add_option("--y-scale", y_scale, "Scale of y, rescaled to unit_0_1 for RMSE");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Inspect the embedded fixtures");
  fixtures_cmd->require_subcommand(1);
  auto* list = fixtures_cmd->add_subcommand("list", "List fixture names");
  std::string dump_name;
  auto* dump = fixtures_cmd->add_subcommand("dump", "Print a fixture file");
  dump->add_option("name", dump_name, "Fixture name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*run) return cmd_run(run_opts, out, err);
  if (*record) return cmd_record(record_opts, out, err);
  if (*appraise) return cmd_appraise(frame_path, scaling, out);
  if (*stats) return cmd_stats(x_spec, y_spec, x_scale, y_scale, out);
  if (*list) {
    for (const auto& name : fixture_names()) out << name << "\n";
    return kExitOk;
  }
  if (*dump) {
    out << fixture_file(dump_name);
    return kExitOk;
  }
  return kExitError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(argc, argv, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"affectkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace affect::cli
