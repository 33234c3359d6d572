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


#include "affectkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "affectkit/error.hpp"
#include "affectkit/text.hpp"

namespace affect {

std::string_view to_string(Dimension d) noexcept {
  switch (d) {
    case Dimension::valence: return "valence";
    case Dimension::arousal: return "arousal";
    case Dimension::dominance: return "dominance";
  }
  return "?";
}

CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::invalid_argument, "pearson: series lengths differ (" + std::to_string(xs.size()) +
                                                 " vs " + std::to_string(ys.size()) + ")");
  }
  const std::size_t n = xs.size();
  if (n < 2) throw Error(ErrorKind::invalid_argument, "pearson: need at least two pairs");

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorKind::invalid_argument, "pearson: zero variance");

  const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {rho, n, std::nullopt, std::nullopt};
}

CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys,
                            std::optional<Dimension> dimension) {
  auto result = pearson(xs, ys);
  result.dimension = dimension;
  if (result.n >= 3) result.p = p_value(result.rho, result.n);
  return result;
}

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  return h;  // converged to within double precision long before this
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::invalid_argument, "incomplete beta needs a, b > 0");
  if (std::isnan(x)) throw Error(ErrorKind::invalid_argument, "incomplete beta argument is NaN");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double students_t_two_tailed(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorKind::invalid_argument, "degrees of freedom must be positive");
  if (std::isnan(t)) throw Error(ErrorKind::invalid_argument, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double p_value(double rho, std::size_t n) {
  if (n < 3) throw Error(ErrorKind::invalid_argument, "p_value needs n >= 3");
  if (std::isnan(rho)) throw Error(ErrorKind::invalid_argument, "p_value: rho is NaN");
  if (std::fabs(rho) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(df / (1.0 - rho * rho));
  return students_t_two_tailed(t, df);
}

double rmse(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::invalid_argument, "rmse: series lengths differ");
  if (xs.empty()) throw Error(ErrorKind::invalid_argument, "rmse: empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double diff = xs[i] - ys[i];
    sum += diff * diff;
  }
  return std::sqrt(sum / static_cast<double>(xs.size()));
}

std::string_view to_string(MatchGrade g) noexcept {
  switch (g) {
    case MatchGrade::complete: return "complete";
    case MatchGrade::partial: return "partial";
    case MatchGrade::none: return "none";
  }
  return "?";
}

MatchResult match_score(const WordPair& predicted, const WordPair& expert, std::span<const std::string> allowed) {
  std::set<std::string> allowed_set;
  for (const auto& w : allowed) allowed_set.insert(text::normalize_term(w));
  const std::set<std::string> pred = {text::normalize_term(predicted.first), text::normalize_term(predicted.second)};
  const std::set<std::string> want = {text::normalize_term(expert.first), text::normalize_term(expert.second)};

  MatchResult result;
  for (const auto& w : pred) {
    if (want.contains(w)) result.common.insert(w);
    if (!allowed_set.contains(w)) result.hallucinated.insert(w);
  }
  result.grade = result.common.size() >= 2   ? MatchGrade::complete
                 : result.common.size() == 1 ? MatchGrade::partial
                                             : MatchGrade::none;
  return result;
}

MatchTally tally_matches(std::span<const MatchResult> results) {
  MatchTally t;
  for (const auto& r : results) {
    switch (r.grade) {
      case MatchGrade::complete: ++t.complete; break;
      case MatchGrade::partial: ++t.partial; break;
      case MatchGrade::none: ++t.none; break;
    }
  }
  return t;
}

}  // namespace affect
