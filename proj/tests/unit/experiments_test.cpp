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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "affectkit/error.hpp"
#include "affectkit/experiments.hpp"
#include "affectkit/metrics.hpp"
#include "affectkit/text.hpp"

namespace affect::experiments {
namespace {

using llm::PromptMessage;
using llm::ScriptedBackend;

std::size_t block_lines(const std::string& block) { return text::split_lines(block).size(); }

// Rates item k of a block as (k/40, 0.5, 1 - k/40).
std::string graded_table(std::size_t n) {
  std::vector<VadTriple> rows;
  for (std::size_t k = 0; k < n; ++k) rows.emplace_back(k / 40.0, 0.5, 1.0 - k / 40.0, Scale::unit_0_1);
  return prompts::render_vad_table(rows);
}

std::string table_for(const Dataset& d, const std::vector<PredictionRecord>& predictions) {
  return prompts::render_vad_table(aligned_predictions(d, predictions));
}

// Rates a situation by the text itself so the answer does not depend on the
// batch it arrives in.
VadTriple text_rating(const std::string& s) {
  const double h = static_cast<double>(std::hash<std::string>{}(s) % 1000) / 999.0;
  return VadTriple(h, 1.0 - h, 0.25 + h / 2, Scale::unit_0_1);
}

TEST(Rq1, OneFreshSessionPerBatch) {
  auto backend = std::make_unique<ScriptedBackend>([](const PromptMessage& p, std::size_t) {
    return p.tag == "P1" ? std::string("Got it.") : graded_table(block_lines(p.text));
  });
  for (const auto& [batch, sessions] : std::vector<std::pair<std::size_t, std::size_t>>{{20, 1}, {7, 3}, {5, 4}, {1, 20}}) {
    ExperimentConfig config;
    config.batch_size = batch;
    auto fresh = std::make_unique<ScriptedBackend>([](const PromptMessage& p, std::size_t) {
      return p.tag == "P1" ? std::string("Got it.") : graded_table(block_lines(p.text));
    });
    const auto report = run_rq1(fixtures().anet20, *fresh, config);
    EXPECT_EQ(report.sessions.size(), sessions) << batch;
    EXPECT_EQ(report.parse_failures(), 0u);
    ASSERT_EQ(report.transcripts.size(), sessions);
    EXPECT_EQ(report.transcripts[0]["messages"].size(), 4u);
  }
  ExperimentConfig zero;
  zero.batch_size = 0;
  EXPECT_THROW(run_rq1(fixtures().anet20, *backend, zero), Error);
}

TEST(Rq1, ShortTableIsResentOnce) {
  const auto report_for = [](std::size_t short_answers) {
    auto backend = std::make_unique<ScriptedBackend>(
        [short_answers, count = std::make_shared<std::size_t>(0)](const PromptMessage& p, std::size_t) {
          if (p.tag == "P1") return std::string("Got it.");
          const auto n = block_lines(p.text);
          return (*count)++ < short_answers ? graded_table(n - 1) : graded_table(n);
        });
    return run_rq1(fixtures().anet20, *backend);
  };
  const auto recovered = report_for(1);
  EXPECT_EQ(recovered.parse_failures(), 0u);
  EXPECT_EQ(recovered.transcripts[0]["messages"].size(), 6u);

  const auto failed = report_for(2);
  EXPECT_EQ(failed.parse_failures(), 20u);
  EXPECT_EQ(failed.backend_failures(), 0u);
  EXPECT_TRUE(failed.aggregates.correlations.empty());
  EXPECT_FALSE(failed.notes.empty());
  for (const auto& row : failed.rows) EXPECT_TRUE(row.parsed.is_null());
}

TEST(Rq1, TooFewRowsGiveNoteInsteadOfCorrelation) {
  const auto two = load_dataset_csv("#scale=anet_1_9\nid,text,v,a,d\na,x,1,2,3\nb,y,4,5,6\n");
  auto backend = std::make_unique<ScriptedBackend>([](const PromptMessage& p, std::size_t) {
    return p.tag == "P1" ? std::string("Got it.") : graded_table(block_lines(p.text));
  });
  const auto report = run_rq1(two, *backend);
  EXPECT_EQ(report.parse_failures(), 0u);
  EXPECT_TRUE(report.aggregates.correlations.empty());
  EXPECT_FALSE(report.notes.empty());
}

TEST(Rq1, BackendFailuresAreCounted) {
  auto backend = ScriptedBackend::scripted({{"Got it."}});
  const auto report = run_rq1(fixtures().anet20, *backend);
  EXPECT_EQ(report.backend_failures(), 20u);
  EXPECT_EQ(report.rows[0].error->kind, ErrorKind::fixture_exhausted);
}

TEST(Rq1, ParallelMatchesSerial) {
  auto make = [] {
    return std::make_unique<ScriptedBackend>([](const PromptMessage& p, std::size_t) {
      if (p.tag == "P1") return std::string("Got it.");
      std::vector<VadTriple> rows;
      for (const auto& line : text::split_lines(p.text)) rows.push_back(text_rating(std::string(line)));
      return prompts::render_vad_table(rows);
    });
  };
  ExperimentConfig serial;
  serial.batch_size = 3;
  ExperimentConfig parallel = serial;
  parallel.parallelism = 4;
  auto a = make();
  auto b = make();
  EXPECT_EQ(canonical_json(run_rq1(fixtures().anet20, *a, serial)),
            canonical_json(run_rq1(fixtures().anet20, *b, parallel)));
}

TEST(Rq1, AggregatesRecomputeFromRows) {
  ExperimentRequest request;
  auto backend = published_responses_backend(request);
  const auto report = run(request, *backend);
  const auto& items = fixtures().anet20.items();
  ASSERT_EQ(report.aggregates.correlations.size(), 3u);
  const char* keys[] = {"v", "a", "d"};
  for (std::size_t dim = 0; dim < 3; ++dim) {
    std::vector<double> truth, predicted;
    for (std::size_t i = 0; i < items.size(); ++i) {
      truth.push_back(items[i].ground_truth.components()[dim]);
      predicted.push_back(report.rows[i].parsed[keys[dim]].get<double>());
    }
    EXPECT_NEAR(report.aggregates.correlations[dim].rho, pearson(truth, predicted).rho, 1e-12);
  }
}

// ---- rq2-numeric ---------------------------------------------------------

std::unique_ptr<ScriptedBackend> mapping_backend(bool farthest) {
  const auto& f = fixtures();
  const auto situations = aligned_predictions(f.anet20, f.anet20_predictions);
  const auto words = aligned_predictions(f.words20, f.words20_predictions);
  const auto first_situation = f.anet20.items().front().text;
  return std::make_unique<ScriptedBackend>([=](const PromptMessage& p, std::size_t) {
    if (p.tag == "P1") return std::string("Got it.");
    if (p.tag == "P1-block") {
      return p.text.find(first_situation) != std::string::npos ? prompts::render_vad_table(situations)
                                                               : prompts::render_vad_table(words);
    }
    std::string reply = "Here is the mapping:\n";
    for (std::size_t i = 0; i < situations.size(); ++i) {
      std::size_t best = 0;
      double best_d = farthest ? -1.0 : 1e9;
      for (std::size_t j = 0; j < words.size(); ++j) {
        const double dv = situations[i].v() - words[j].v();
        const double da = situations[i].a() - words[j].a();
        const double dd = situations[i].d() - words[j].d();
        const double d = std::sqrt(dv * dv + da * da + dd * dd);
        if (farthest ? d > best_d : d < best_d) {
          best_d = d;
          best = j;
        }
      }
      reply += std::to_string(i + 1) + ". " + f.words20.items()[best].text + "\n";
    }
    return reply;
  });
}

TEST(Rq2Numeric, NearestAndFarthestWordRanks) {
  const auto& f = fixtures();
  for (bool farthest : {false, true}) {
    auto backend = mapping_backend(farthest);
    const auto report = run_rq2_numeric(f.anet20, f.words20, *backend);
    EXPECT_EQ(report.sessions.size(), 1u);
    EXPECT_EQ(report.parse_failures(), 0u);
    ASSERT_EQ(report.aggregates.ranks.size(), 20u);
    for (const auto& r : report.aggregates.ranks) EXPECT_EQ(r.rank, farthest ? 20u : 1u) << r.situation_id;
  }
}

TEST(Rq2Numeric, PublishedDistance) {
  ExperimentRequest request{.id = ExperimentId::rq2_numeric};
  auto backend = published_responses_backend(request);
  const auto report = run(request, *backend);
  const auto& first = report.aggregates.ranks.front();
  EXPECT_EQ(first.word, "excited");
  // (0.81, 0.93, 0.55) against (0.84, 0.91, 0.67): sqrt(0.0157).
  EXPECT_NEAR(first.distance, 0.125300, 5e-7);
  EXPECT_EQ(first.rank, 1u);
  EXPECT_EQ(first.reported_distance, 0.08);
  ASSERT_EQ(report.transcripts.size(), 1u);
  EXPECT_EQ(report.transcripts[0]["messages"].size(), 10u);
}

TEST(Rq2Numeric, MissingPickIsRowParseError) {
  const auto& f = fixtures();
  auto inner = mapping_backend(false);
  auto backend = std::make_unique<ScriptedBackend>([&](const PromptMessage& p, std::size_t i) {
    auto reply = inner->start_conversation()->reply({}, p).text;
    if (p.tag == "P2") reply = reply.substr(0, reply.find("\n20."));
    (void)i;
    return reply;
  });
  const auto report = run_rq2_numeric(f.anet20, f.words20, *backend);
  EXPECT_EQ(report.parse_failures(), 1u);
  EXPECT_TRUE(report.rows.back().error.has_value());
  EXPECT_EQ(report.aggregates.ranks.size(), 19u);
}

// ---- rq2-latent ----------------------------------------------------------

TEST(Rq2Latent, ExpertAnswersMatchCompletely) {
  const auto& f = fixtures();
  auto backend = std::make_unique<ScriptedBackend>([&](const PromptMessage& p, std::size_t) {
    for (std::size_t i = 0; i < f.anet20.size(); ++i) {
      if (p.text.find(f.anet20.items()[i].text) != std::string::npos) return f.word_mapping[i].expert_mapping;
    }
    return std::string("none");
  });
  const auto report = run_rq2_latent(f.anet20, f.words20, *backend, embedded_expert_mapping());
  ASSERT_TRUE(report.aggregates.tally.has_value());
  EXPECT_EQ(*report.aggregates.tally, (MatchTally{20, 0, 0}));
  EXPECT_TRUE(report.aggregates.hallucinations.empty());
  EXPECT_EQ(report.sessions.size(), 20u);
}

TEST(Rq2Latent, PublishedHallucinationsAndUnparsedRows) {
  ExperimentRequest request{.id = ExperimentId::rq2_latent};
  auto backend = published_responses_backend(request);
  const auto report = run(request, *backend);
  EXPECT_EQ(report.aggregates.hallucinations.size(), 5u);

  const auto& f = fixtures();
  auto one_word = ScriptedBackend::fixed("excited");
  const auto failed = run_rq2_latent(f.anet20, f.words20, *one_word, embedded_expert_mapping());
  EXPECT_EQ(failed.parse_failures(), 20u);
  EXPECT_EQ(*failed.aggregates.tally, (MatchTally{0, 0, 20}));
}

// ---- rq2-generate --------------------------------------------------------

TEST(Rq2Generate, RatingsDefaultToPending) {
  ExperimentRequest request{.id = ExperimentId::rq2_generate};
  auto backend = published_responses_backend(request);
  const auto report = run(request, *backend);
  ASSERT_EQ(report.rows.size(), 9u);
  EXPECT_EQ(report.rows[0].id, "V+A-D-");
  EXPECT_NE(report.rows[0].parsed["situation"].get<std::string>().find("peaceful park"), std::string::npos);
  for (const auto& row : report.rows) EXPECT_EQ(row.parsed["rating"], "pending");

  auto again = published_responses_backend(request);
  const auto rated = run_rq2_generate(*again, {{"V+A-D-", "V+A-D-"}});
  EXPECT_EQ(rated.rows[0].parsed["rating"], "V+A-D-");
  EXPECT_EQ(rated.rows[1].parsed["rating"], "pending");
}

TEST(Rq2Generate, EmptyGenerationIsParseError) {
  auto backend = ScriptedBackend::fixed("   ");
  const auto report = run_rq2_generate(*backend);
  EXPECT_EQ(report.parse_failures(), 9u);
}

TEST(Rq2Generate, RatingsSideFile) {
  const auto path = std::filesystem::temp_directory_path() / "affectkit_ratings_test.csv";
  text::write_file(path, "prompt,rating\nV+A-D-,V+A-D-\nneutral,V+A+D+\n");
  const auto ratings = load_ratings(path);
  std::filesystem::remove(path);
  EXPECT_EQ(ratings.size(), 2u);
  EXPECT_EQ(ratings.at("neutral"), "V+A+D+");
}

// ---- rq3 -----------------------------------------------------------------

TEST(Rq3, FixedJoyAndEngine) {
  const auto& cases = fixtures().elicitation;
  auto joy = ScriptedBackend::fixed("Joy");
  const auto mock = run_rq3(cases, *joy);
  EXPECT_EQ(mock.aggregates.accuracy->correct, 1u);
  EXPECT_EQ(mock.aggregates.accuracy->total, 12u);
  EXPECT_EQ(mock.aggregates.failures.size(), 11u);

  EngineBackend engine(cases);
  const auto exact = run_rq3(cases, engine);
  EXPECT_EQ(exact.aggregates.accuracy->correct, 12u);
  EXPECT_TRUE(exact.aggregates.failures.empty());

  auto mute = ScriptedBackend::fixed("I cannot say.");
  const auto unparsed = run_rq3(cases, *mute);
  EXPECT_EQ(unparsed.parse_failures(), 12u);
  EXPECT_EQ(unparsed.aggregates.accuracy->correct, 0u);
  EXPECT_FALSE(unparsed.aggregates.failures.front().predicted.has_value());
}

// ---- reports -------------------------------------------------------------

TEST(Report, RunDirectoryAndCsv) {
  ExperimentRequest request{.id = ExperimentId::rq3};
  auto backend = published_responses_backend(request);
  const auto report = run(request, *backend);
  const auto dir = std::filesystem::temp_directory_path() / "affectkit_run_dir_test";
  std::filesystem::remove_all(dir);
  write_run_directory(report, config_to_json(request), dir);
  EXPECT_EQ(text::read_file(dir / "report.json"), canonical_json(report));
  EXPECT_TRUE(std::filesystem::exists(dir / "config.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "report.csv"));
  for (const auto& s : report.sessions) {
    EXPECT_TRUE(std::filesystem::exists(dir / "transcripts" / (s + ".json"))) << s;
  }
  std::filesystem::remove_all(dir);

  const auto csv = to_csv(report);
  EXPECT_TRUE(csv.starts_with("id,session,status,parsed,error_kind,error\n"));
  EXPECT_EQ(text::split_lines(text::trim(csv)).size(), 13u);
}

TEST(Report, CanonicalFormIsStable) {
  ExperimentRequest request{.id = ExperimentId::rq2_latent};
  auto a = published_responses_backend(request);
  auto b = published_responses_backend(request);
  const auto first = canonical_json(run(request, *a));
  EXPECT_EQ(first, canonical_json(run(request, *b)));
  EXPECT_EQ(first.find("timestamp"), std::string::npos);
  EXPECT_TRUE(first.ends_with("}\n"));
}

TEST(ExperimentIds, NamesAndAliases) {
  for (auto id : kAllExperiments) EXPECT_EQ(parse_experiment_id(to_string(id)), id);
  EXPECT_EQ(parse_experiment_id("RQ2.3"), ExperimentId::rq2_generate);
  EXPECT_THROW(parse_experiment_id("rq4"), Error);
}

TEST(ForEachParallel, RunsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  for_each_parallel(100, 8, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(for_each_parallel(10, 4, [](std::size_t i) {
                 if (i == 7) throw Error(ErrorKind::transport, "boom");
               }),
               Error);
}

}  // namespace
}  // namespace affect::experiments
