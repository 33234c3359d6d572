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


#include "affectkit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "affectkit/csv.hpp"
#include "affectkit/error.hpp"
#include "affectkit/text.hpp"

namespace affect::experiments {

namespace {

using nlohmann::ordered_json;

constexpr std::array<Dimension, 3> kDimensions = {Dimension::valence, Dimension::arousal, Dimension::dominance};

RowError row_error(const Error& e) { return {e.kind(), e.what()}; }

std::vector<llm::ChatSession> open_sessions(llm::Backend& backend, std::size_t count) {
  // Opened in item order so that session ids and replay order do not depend
  // on thread scheduling.
  std::vector<llm::ChatSession> sessions;
  sessions.reserve(count);
  for (std::size_t i = 0; i < count; ++i) sessions.push_back(llm::open_session(backend));
  return sessions;
}

ExperimentReport start_report(ExperimentId id, const llm::Backend& backend, ordered_json settings) {
  ExperimentReport report;
  report.experiment = std::string(to_string(id));
  report.backend = backend.descriptor();
  report.settings = std::move(settings);
  return report;
}

void finish_report(ExperimentReport& report, const std::vector<llm::ChatSession>& sessions) {
  for (const auto& s : sessions) {
    report.sessions.push_back(s.id());
    report.transcripts.push_back(llm::transcript_to_json(s));
  }
}

ordered_json vad_json(const VadTriple& t) { return {{"v", t.v()}, {"a", t.a()}, {"d", t.d()}}; }

std::vector<std::string> normalized_ids(const Dataset& d) {
  std::vector<std::string> out;
  for (const auto& s : d.items()) out.push_back(text::normalize_term(s.id));
  return out;
}

std::vector<std::string> word_list(const Dataset& words) {
  std::vector<std::string> out;
  for (const auto& s : words.items()) out.push_back(s.text);
  return out;
}

ordered_json words_json(const std::vector<std::string>& words) {
  auto j = ordered_json::array();
  for (const auto& w : words) j.push_back(w);
  return j;
}

void require_kind(const Dataset& d, StimulusKind kind, std::string_view role) {
  if (d.kind() != kind) {
    throw Error(ErrorKind::invalid_argument, std::string(role) + " dataset '" + d.name() + "' holds " +
                                                 std::string(to_string(d.kind())) + " stimuli");
  }
}

void aggregate_vad(ExperimentReport& report, const Dataset& dataset) {
  for (std::size_t k = 0; k < kDimensions.size(); ++k) {
    std::vector<double> truth_native;
    std::vector<double> truth_unit;
    std::vector<double> predicted;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const auto& row = report.rows[i];
      if (row.error) continue;
      const auto& gt = dataset.find(row.id).ground_truth;
      truth_native.push_back(gt[k]);
      truth_unit.push_back(rescale_value(gt[k], gt.scale(), Scale::unit_0_1));
      predicted.push_back(row.parsed.at(std::string(1, "vad"[k])).get<double>());
    }
    const auto name = std::string(to_string(kDimensions[k]));
    if (predicted.size() < 3) {
      report.notes.push_back(name + ": fewer than 3 parsed rows, no aggregate");
      continue;
    }
    try {
      report.aggregates.correlations.push_back(correlate(truth_native, predicted, kDimensions[k]));
    } catch (const Error& e) {
      report.notes.push_back(name + ": " + e.what());
    }
    report.aggregates.rmse.emplace_back(kDimensions[k], rmse(truth_unit, predicted));
  }
}

std::string first_line_of(const Error& e) {
  std::string m = e.what();
  return m.substr(0, m.find('\n'));
}

}  // namespace

std::string_view to_string(ExperimentId id) noexcept {
  switch (id) {
    case ExperimentId::rq1: return "rq1";
    case ExperimentId::rq2_numeric: return "rq2-numeric";
    case ExperimentId::rq2_latent: return "rq2-latent";
    case ExperimentId::rq2_generate: return "rq2-generate";
    case ExperimentId::rq3: return "rq3";
  }
  return "unknown";
}

ExperimentId parse_experiment_id(std::string_view name) {
  const auto n = text::to_lower(text::trim(name));
  for (auto id : kAllExperiments) {
    if (n == to_string(id)) return id;
  }
  if (n == "rq2.1") return ExperimentId::rq2_numeric;
  if (n == "rq2.2") return ExperimentId::rq2_latent;
  if (n == "rq2.3") return ExperimentId::rq2_generate;
  throw Error(ErrorKind::invalid_argument, "unknown experiment '" + std::string(name) + "'");
}

std::size_t ExperimentReport::parse_failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.error && r.error->kind == ErrorKind::parse; }));
}

std::size_t ExperimentReport::backend_failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.error && r.error->kind != ErrorKind::parse; }));
}

void for_each_parallel(std::size_t count, std::size_t parallelism, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(count, std::max<std::size_t>(1, parallelism));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  threads.clear();
  if (failure) std::rethrow_exception(failure);
}

// ---- RQ1 -------------------------------------------------------------------

ExperimentReport run_rq1(const Dataset& dataset, llm::Backend& backend, const ExperimentConfig& config) {
  if (config.batch_size == 0) throw Error(ErrorKind::invalid_argument, "batch size must be positive");
  auto report = start_report(ExperimentId::rq1, backend,
                             {{"dataset", dataset.name()},
                              {"kind", to_string(dataset.kind())},
                              {"scale", to_string(dataset.scale())},
                              {"items", dataset.size()},
                              {"batch_size", config.batch_size},
                              {"dominance_clause", config.dominance_clause},
                              {"session_policy", "fresh session per batch"}});

  const auto& items = dataset.items();
  const std::size_t batches = (items.size() + config.batch_size - 1) / config.batch_size;
  auto sessions = open_sessions(backend, batches);
  std::vector<std::vector<ReportRow>> outcome(batches);

  for_each_parallel(batches, config.parallelism, [&](std::size_t b) {
    auto& session = sessions[b];
    const std::size_t begin = b * config.batch_size;
    const std::size_t end = std::min(items.size(), begin + config.batch_size);
    std::vector<std::string> texts;
    auto& rows = outcome[b];
    for (std::size_t i = begin; i < end; ++i) {
      texts.push_back(items[i].text);
      rows.push_back({items[i].id, session.id(), {}, nullptr, std::nullopt});
    }
    std::string response;
    try {
      // The acknowledgement is kept in the transcript but not parsed.
      session.send({"P1", prompts::sentiment_instruction(config.dominance_clause)});
      const llm::PromptMessage block{"P1-block", prompts::stimulus_block(texts)};
      response = session.send(block);
      std::vector<prompts::ParsedVadRow> parsed;
      try {
        parsed = prompts::parse_vad_table(response, texts.size());
      } catch (const prompts::RowCountError&) {
        response = session.send(block);
        parsed = prompts::parse_vad_table(response, texts.size());
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].response = response;
        rows[i].parsed = vad_json(parsed[i].vad);
      }
    } catch (const Error& e) {
      for (auto& row : rows) {
        row.response = response;
        row.error = row_error(e);
      }
    }
  });

  for (auto& batch : outcome) {
    for (auto& row : batch) report.rows.push_back(std::move(row));
  }
  aggregate_vad(report, dataset);
  finish_report(report, sessions);
  return report;
}

// ---- RQ2.1 -----------------------------------------------------------------

ExperimentReport run_rq2_numeric(const Dataset& situations, const Dataset& words, llm::Backend& backend,
                                 const std::vector<WordMappingRow>& reported, const ExperimentConfig& config) {
  require_kind(situations, StimulusKind::situation, "situation");
  require_kind(words, StimulusKind::word, "word");
  auto report = start_report(ExperimentId::rq2_numeric, backend,
                             {{"situations", situations.name()},
                              {"words", words.name()},
                              {"dominance_clause", config.dominance_clause},
                              {"session_policy", "single session"}});

  auto sessions = open_sessions(backend, 1);
  auto& session = sessions.front();
  const auto allowed = word_list(words);
  for (const auto& s : situations.items()) report.rows.push_back({s.id, session.id(), {}, nullptr, std::nullopt});

  std::string response;
  try {
    const auto instruction = prompts::sentiment_instruction(config.dominance_clause);
    const auto situation_texts = situations.texts();
    const auto word_texts = words.texts();

    session.send({"P1", instruction});
    response = session.send({"P1-block", prompts::stimulus_block(situation_texts)});
    const auto situation_vad = prompts::parse_vad_table(response, situations.size());
    session.send({"P1", instruction});
    response = session.send({"P1-block", prompts::stimulus_block(word_texts)});
    const auto word_vad = prompts::parse_vad_table(response, words.size());
    response = session.send({"P2", prompts::render_numeric_mapping_prompt()});
    const auto picks = prompts::parse_numeric_mapping(response, situations.size(), allowed);

    std::vector<LabeledTriple> rows;
    std::vector<LabeledTriple> cols;
    for (std::size_t i = 0; i < situations.size(); ++i) rows.emplace_back(situations.items()[i].id, situation_vad[i].vad);
    const auto word_ids = normalized_ids(words);
    for (std::size_t i = 0; i < words.size(); ++i) cols.emplace_back(word_ids[i], word_vad[i].vad);
    const auto matrix = distance_matrix(rows, cols);

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      auto& row = report.rows[i];
      row.response = response;
      if (!picks[i]) {
        row.error = RowError{ErrorKind::parse, "no word chosen for situation " + std::to_string(i + 1)};
        continue;
      }
      RankEntry entry{row.id, *picks[i], matrix.at(row.id, *picks[i]), rank_of(matrix, row.id, *picks[i]),
                      std::nullopt, std::nullopt};
      const auto it = std::find_if(reported.begin(), reported.end(),
                                   [&](const WordMappingRow& r) { return r.situation_id == row.id; });
      if (it != reported.end()) {
        entry.reported_distance = it->numeric_distance;
        entry.reported_rank = it->numeric_rank;
      }
      row.parsed = {{"situation", vad_json(situation_vad[i].vad)},
                    {"word", entry.word},
                    {"distance", entry.distance},
                    {"rank", entry.rank}};
      report.aggregates.ranks.push_back(std::move(entry));
    }
  } catch (const Error& e) {
    for (auto& row : report.rows) {
      if (row.error || !row.parsed.is_null()) continue;
      row.response = response;
      row.error = row_error(e);
    }
  }
  finish_report(report, sessions);
  return report;
}

// ---- RQ2.2 -----------------------------------------------------------------

ExperimentReport run_rq2_latent(const Dataset& situations, const Dataset& words, llm::Backend& backend,
                                const std::map<std::string, WordPair>& expert, const ExperimentConfig& config) {
  require_kind(situations, StimulusKind::situation, "situation");
  require_kind(words, StimulusKind::word, "word");
  for (const auto& s : situations.items()) {
    if (!expert.contains(s.id)) {
      throw Error(ErrorKind::invalid_argument, "expert mapping has no entry for situation " + s.id);
    }
  }
  auto report = start_report(
      ExperimentId::rq2_latent, backend,
      {{"situations", situations.name()},
       {"words", words.name()},
       {"variant", config.word_pick == prompts::WordPickVariant::standard ? "standard" : "perspective"},
       {"session_policy", "one session per situation"}});

  const auto allowed = word_list(words);
  auto sessions = open_sessions(backend, situations.size());
  std::vector<ReportRow> rows(situations.size());
  std::vector<MatchResult> matches(situations.size());
  std::vector<std::vector<std::string>> hallucinated(situations.size());

  for_each_parallel(situations.size(), config.parallelism, [&](std::size_t i) {
    const auto& s = situations.items()[i];
    auto& row = rows[i];
    row.id = s.id;
    row.session = sessions[i].id();
    const auto& gold = expert.at(s.id);
    try {
      row.response = sessions[i].send({"P3", prompts::render_word_pick_prompt(s.text, allowed, config.word_pick)});
      const auto pick = prompts::parse_word_pair(row.response, allowed);
      matches[i] = match_score(pick.pair(), gold, allowed);
      hallucinated[i] = pick.hallucinated;
      row.parsed = {{"primary", words_json(pick.primary)},
                    {"alternates", words_json(pick.alternates)},
                    {"hallucinated", words_json(pick.hallucinated)},
                    {"expert", {gold.first, gold.second}},
                    {"grade", to_string(matches[i].grade)}};
    } catch (const Error& e) {
      // Counted as no match.
      matches[i] = MatchResult{};
      row.error = row_error(e);
    }
  });

  report.rows = std::move(rows);
  report.aggregates.tally = tally_matches(matches);
  for (const auto& h : hallucinated) {
    report.aggregates.hallucinations.insert(report.aggregates.hallucinations.end(), h.begin(), h.end());
  }
  finish_report(report, sessions);
  return report;
}

// ---- RQ2.3 -----------------------------------------------------------------

ExperimentReport run_rq2_generate(llm::Backend& backend, const std::map<std::string, std::string>& ratings,
                                  const ExperimentConfig& config) {
  const auto& octants = canonical_octants();
  auto report = start_report(ExperimentId::rq2_generate, backend,
                             {{"octants", octants.size()},
                              {"ratings", ratings.empty() ? "pending" : "side file"},
                              {"session_policy", "one session per octant"}});

  auto sessions = open_sessions(backend, octants.size());
  std::vector<ReportRow> rows(octants.size());
  for_each_parallel(octants.size(), config.parallelism, [&](std::size_t i) {
    const auto signature = octant_signature(octants[i]);
    auto& row = rows[i];
    row.id = signature;
    row.session = sessions[i].id();
    try {
      row.response = sessions[i].send({"P4", prompts::render_octant_prompt(octants[i])});
      const auto situation = std::string(text::trim(row.response));
      if (situation.empty()) throw ParseError("empty generation", 0, 0);
      const auto rating = ratings.find(signature);
      row.parsed = {{"octant", signature},
                    {"situation", situation},
                    {"rating", rating == ratings.end() ? "pending" : rating->second}};
    } catch (const Error& e) {
      row.error = row_error(e);
    }
  });
  report.rows = std::move(rows);
  finish_report(report, sessions);
  return report;
}

// ---- RQ3 -------------------------------------------------------------------

ExperimentReport run_rq3(const std::vector<ElicitationCase>& cases, llm::Backend& backend,
                         const ExperimentConfig& config) {
  auto report = start_report(ExperimentId::rq3, backend,
                             {{"cases", cases.size()},
                              {"rule_order", "presentation"},
                              {"session_policy", "one session per case"}});

  const auto rules = occ::rules_in_presentation_order();
  auto sessions = open_sessions(backend, cases.size());
  std::vector<ReportRow> rows(cases.size());
  std::vector<std::optional<occ::EmotionLabel>> predicted(cases.size());

  for_each_parallel(cases.size(), config.parallelism, [&](std::size_t i) {
    const auto& c = cases[i];
    auto& row = rows[i];
    row.id = std::string(occ::to_string(c.expected));
    row.session = sessions[i].id();
    try {
      row.response = sessions[i].send({"P5", prompts::render_chatocc_prompt(rules, c.situation)});
      const auto reading = prompts::parse_emotion_label(row.response);
      predicted[i] = reading.label;
      row.parsed = {{"label", occ::to_string(reading.label)}};
      if (reading.intensity) row.parsed["intensity"] = occ::to_string(*reading.intensity);
      row.parsed["expected"] = occ::to_string(c.expected);
      row.parsed["correct"] = reading.label == c.expected;
    } catch (const Error& e) {
      row.error = row_error(e);
    }
  });

  Accuracy accuracy{0, cases.size()};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (predicted[i] == cases[i].expected) {
      ++accuracy.correct;
    } else {
      report.aggregates.failures.push_back({rows[i].id, cases[i].expected, predicted[i]});
    }
  }
  report.aggregates.accuracy = accuracy;
  report.rows = std::move(rows);
  finish_report(report, sessions);
  return report;
}

// ---- dispatch and side files -----------------------------------------------

std::map<std::string, WordPair> embedded_expert_mapping() {
  const auto& f = fixtures();
  const auto allowed = word_list(f.words20);
  std::map<std::string, WordPair> out;
  for (const auto& row : f.word_mapping) out[row.situation_id] = prompts::parse_word_pair(row.expert_mapping, allowed).pair();
  return out;
}

std::map<std::string, WordPair> load_expert_mapping(const std::filesystem::path& path, const Dataset& words) {
  const auto doc = csv::parse(text::read_file(path));
  const std::vector<std::string> header = {"id", "expert_mapping"};
  if (doc.records.empty() || doc.records.front().fields != header) {
    throw Error(ErrorKind::parse, path.string() + ": expected header id,expert_mapping");
  }
  const auto allowed = word_list(words);
  std::map<std::string, WordPair> out;
  for (std::size_t i = 1; i < doc.records.size(); ++i) {
    const auto& r = doc.records[i];
    if (r.fields.size() != 2) throw ParseError(path.string() + ": expected 2 fields", r.line, 0);
    try {
      out[r.fields[0]] = prompts::parse_word_pair(r.fields[1], allowed).pair();
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + first_line_of(e), r.line, 2);
    }
  }
  return out;
}

std::map<std::string, std::string> load_ratings(const std::filesystem::path& path) {
  const auto doc = csv::parse(text::read_file(path));
  const std::vector<std::string> header = {"prompt", "rating"};
  if (doc.records.empty() || doc.records.front().fields != header) {
    throw Error(ErrorKind::parse, path.string() + ": expected header prompt,rating");
  }
  std::map<std::string, std::string> out;
  for (std::size_t i = 1; i < doc.records.size(); ++i) {
    const auto& r = doc.records[i];
    if (r.fields.size() != 2) throw ParseError(path.string() + ": expected 2 fields", r.line, 0);
    out[octant_signature(parse_signature(r.fields[0]))] = r.fields[1];
  }
  return out;
}

ExperimentReport run(const ExperimentRequest& request, llm::Backend& backend) {
  const auto& f = fixtures();
  switch (request.id) {
    case ExperimentId::rq1:
      return run_rq1(request.dataset ? *request.dataset : f.anet20, backend, request.config);
    case ExperimentId::rq2_numeric:
      return run_rq2_numeric(f.anet20, f.words20, backend, f.word_mapping, request.config);
    case ExperimentId::rq2_latent:
      return run_rq2_latent(f.anet20, f.words20, backend,
                            request.expert ? *request.expert : embedded_expert_mapping(), request.config);
    case ExperimentId::rq2_generate:
      return run_rq2_generate(backend, request.ratings, request.config);
    case ExperimentId::rq3:
      return run_rq3(f.elicitation, backend, request.config);
  }
  throw Error(ErrorKind::invalid_argument, "unknown experiment");
}

}  // namespace affect::experiments
