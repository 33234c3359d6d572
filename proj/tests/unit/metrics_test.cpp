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

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "affectkit/error.hpp"
#include "affectkit/metrics.hpp"
#include "affectkit/stimuli.hpp"

namespace affect {
namespace {

TEST(Pearson, PerfectAndKnownCorrelations) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  EXPECT_NEAR(pearson(x, std::vector<double>{2, 4, 6, 8, 10}).rho, 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, std::vector<double>{5, 4, 3, 2, 1}).rho, -1.0, 1e-15);
  // Hand computation: sxy = 8, sxx = 10, syy = 10.
  EXPECT_NEAR(pearson(x, std::vector<double>{2, 1, 4, 3, 5}).rho, 0.8, 1e-15);
}

TEST(Pearson, RejectsDegenerateInput) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_THROW(pearson(x, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), Error);
  EXPECT_THROW(pearson(x, std::vector<double>{4, 4, 4}), Error);
}

TEST(Correlate, AddsPValueFromThreePairs) {
  const auto two = correlate(std::vector<double>{1, 2}, std::vector<double>{1, 3});
  EXPECT_FALSE(two.p.has_value());
  const auto three = correlate(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}, Dimension::arousal);
  ASSERT_TRUE(three.p.has_value());
  EXPECT_EQ(three.dimension, Dimension::arousal);
  EXPECT_EQ(three.n, 3u);
}

TEST(PValue, ExactValueForEvenDegreesOfFreedom) {
  // rho = 0.5, n = 10: df = 8, x = df / (df + t^2) = 3/4 and
  // p = I_{3/4}(4, 1/2), which for integer a sums to 289/2048.
  EXPECT_NEAR(p_value(0.5, 10), 289.0 / 2048.0, 1e-13);
  EXPECT_DOUBLE_EQ(p_value(0.0, 10), 1.0);
  EXPECT_DOUBLE_EQ(p_value(1.0, 10), 0.0);
  EXPECT_DOUBLE_EQ(p_value(-1.0, 10), 0.0);
  EXPECT_THROW(p_value(0.5, 2), Error);
}

TEST(PValue, AgreesWithBoostStudentsT) {
  for (std::size_t n = 3; n <= 200; n += 7) {
    for (double rho = -0.99; rho < 1.0; rho += 0.03) {
      const double df = static_cast<double>(n - 2);
      const double t = rho * std::sqrt(df / (1 - rho * rho));
      const boost::math::students_t dist(df);
      const double expected = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
      EXPECT_NEAR(p_value(rho, n), expected, 1e-10) << "rho=" << rho << " n=" << n;
    }
  }
}

TEST(IncompleteBeta, SymmetryAndEndpoints) {
  EXPECT_DOUBLE_EQ(regularized_incomplete_beta(2, 3, 0), 0.0);
  EXPECT_DOUBLE_EQ(regularized_incomplete_beta(2, 3, 1), 1.0);
  for (double x = 0.05; x < 1; x += 0.1) {
    EXPECT_NEAR(regularized_incomplete_beta(2.5, 4, x), 1 - regularized_incomplete_beta(4, 2.5, 1 - x), 1e-13);
  }
  // I_x(1, 1) = x.
  EXPECT_NEAR(regularized_incomplete_beta(1, 1, 0.3), 0.3, 1e-15);
  EXPECT_THROW(regularized_incomplete_beta(0, 1, 0.5), Error);
}

TEST(PValue, FixtureFootersAreSignificant) {
  const auto& f = fixtures();
  std::vector<double> truth, predicted;
  for (std::size_t i = 0; i < f.anet20.size(); ++i) {
    truth.push_back(f.anet20.items()[i].ground_truth.v());
    predicted.push_back(f.anet20_predictions[i].vad.v());
  }
  const auto r = correlate(truth, predicted);
  EXPECT_NEAR(r.rho, 0.98, 0.015);
  EXPECT_LT(*r.p, 0.001);
}

TEST(Rmse, KnownValues) {
  EXPECT_DOUBLE_EQ(rmse(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(rmse(std::vector<double>{0, 0}, std::vector<double>{3, 4}), std::sqrt(12.5));
  EXPECT_THROW(rmse(std::vector<double>{}, std::vector<double>{}), Error);
  EXPECT_THROW(rmse(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
}

TEST(Rmse, AnetFixtureOnUnitScale) {
  const auto& f = fixtures();
  std::vector<double> truth, predicted;
  for (std::size_t i = 0; i < f.anet20.size(); ++i) {
    truth.push_back((f.anet20.items()[i].ground_truth.v() - 1.0) / 8.0);
    predicted.push_back(f.anet20_predictions[i].vad.v());
  }
  EXPECT_NEAR(rmse(truth, predicted), 0.1007, 1e-4);
}

const std::vector<std::string> kAllowed = {"excited", "enjoyment", "alert", "mildly annoyed", "confused"};

TEST(MatchScore, Grades) {
  EXPECT_EQ(match_score({"excited", "enjoyment"}, {"enjoyment", "excited"}, kAllowed).grade, MatchGrade::complete);
  EXPECT_EQ(match_score({"alert", "excited"}, {"confused", "alert"}, kAllowed).grade, MatchGrade::partial);
  EXPECT_EQ(match_score({"alert", "excited"}, {"confused", "enjoyment"}, kAllowed).grade, MatchGrade::none);
}

TEST(MatchScore, NormalizesAndFlagsHallucinations) {
  const auto r = match_score({"Mildly_Annoyed", "anxious"}, {"mildly annoyed", "confused"}, kAllowed);
  EXPECT_EQ(r.grade, MatchGrade::partial);
  EXPECT_EQ(r.common, std::set<std::string>{"mildly annoyed"});
  EXPECT_EQ(r.hallucinated, std::set<std::string>{"anxious"});
}

TEST(MatchScore, TallyCountsGrades) {
  std::vector<MatchResult> results(5);
  results[0].grade = MatchGrade::complete;
  results[1].grade = MatchGrade::partial;
  results[2].grade = MatchGrade::partial;
  const auto t = tally_matches(results);
  EXPECT_EQ(t, (MatchTally{1, 2, 2}));
  EXPECT_EQ(t.total(), 5u);
}

}  // namespace
}  // namespace affect
