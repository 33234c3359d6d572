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


#ifndef AFFECTKIT_METRICS_HPP_
#define AFFECTKIT_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace affect {

enum class Dimension { valence, arousal, dominance };

std::string_view to_string(Dimension d) noexcept;

struct CorrelationResult {
  double rho = 0.0;
  std::size_t n = 0;
  std::optional<double> p;  // two-tailed, present when n >= 3
  std::optional<Dimension> dimension;
};

/// Sample Pearson coefficient. Throws on length mismatch, n < 2 or a
/// constant series.
CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys);

/// pearson() plus the two-tailed p-value when n >= 3.
CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys,
                            std::optional<Dimension> dimension = std::nullopt);

/// Two-tailed p for H0: rho = 0 using t = rho * sqrt((n-2)/(1-rho^2)) with
/// n-2 degrees of freedom. |rho| >= 1 gives 0; n < 3 throws.
double p_value(double rho, std::size_t n);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double students_t_two_tailed(double t, double df);

/// Both series must already share a scale.
double rmse(std::span<const double> xs, std::span<const double> ys);

// ---- word-pair matching --------------------------------------------------

using WordPair = std::pair<std::string, std::string>;

enum class MatchGrade { complete, partial, none };

std::string_view to_string(MatchGrade g) noexcept;

struct MatchResult {
  MatchGrade grade = MatchGrade::none;
  std::set<std::string> common;
  std::set<std::string> hallucinated;  // predicted words missing from the allowed list
};

/// Order-insensitive comparison of the two primary predicted words with the
/// expert pair. Words are compared after normalize_term().
MatchResult match_score(const WordPair& predicted, const WordPair& expert, std::span<const std::string> allowed);

struct MatchTally {
  std::size_t complete = 0;
  std::size_t partial = 0;
  std::size_t none = 0;

  std::size_t total() const noexcept { return complete + partial + none; }
  friend bool operator==(const MatchTally&, const MatchTally&) = default;
};

MatchTally tally_matches(std::span<const MatchResult> results);

}  // namespace affect

#endif  // AFFECTKIT_METRICS_HPP_
