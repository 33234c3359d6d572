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


#ifndef AFFECTKIT_AFFECT_SPACE_HPP_
#define AFFECTKIT_AFFECT_SPACE_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace affect {

// Rating scales used by the datasets. Every scale is a closed interval.
enum class Scale {
  anet_1_9,      // ANET situation ratings, 1..9
  russell_m1_1,  // Russell & Mehrabian word ratings, -1..1
  unit_0_1,      // model predictions, 0..1
};

struct ScaleBounds {
  double min;
  double max;
};

constexpr ScaleBounds bounds(Scale scale) noexcept {
  switch (scale) {
    case Scale::anet_1_9: return {1.0, 9.0};
    case Scale::russell_m1_1: return {-1.0, 1.0};
    case Scale::unit_0_1: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

std::string_view to_string(Scale scale) noexcept;
Scale parse_scale(std::string_view name);

/// A point in Valence/Arousal/Dominance space together with the scale its
/// components are expressed in. Construction rejects non-finite or
/// out-of-bounds components, so every live value is valid.
class VadTriple {
 public:
  VadTriple(double valence, double arousal, double dominance, Scale scale);

  double v() const noexcept { return components_[0]; }
  double a() const noexcept { return components_[1]; }
  double d() const noexcept { return components_[2]; }
  double operator[](std::size_t i) const { return components_.at(i); }
  const std::array<double, 3>& components() const noexcept { return components_; }
  Scale scale() const noexcept { return scale_; }

  friend bool operator==(const VadTriple&, const VadTriple&) = default;

 private:
  std::array<double, 3> components_;
  Scale scale_;
};

/// Affine map of each component from the triple's scale onto `target`.
VadTriple rescale(const VadTriple& t, Scale target);
double rescale_value(double x, Scale from, Scale to) noexcept;

/// Throws Error(scale_mismatch) when the scales differ.
double euclidean_distance(const VadTriple& a, const VadTriple& b);

using LabeledTriple = std::pair<std::string, VadTriple>;

// Pairwise distances between stimuli (rows) and emotion words (columns).
class DistanceMatrix {
 public:
  DistanceMatrix(std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                 std::vector<double> cells);

  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
  const std::vector<std::string>& col_ids() const noexcept { return col_ids_; }
  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return col_ids_.size(); }

  double at(std::size_t row, std::size_t col) const;
  double at(std::string_view row_id, std::string_view col_id) const;
  std::span<const double> row(std::size_t row) const;
  std::size_t row_index(std::string_view row_id) const;
  std::size_t col_index(std::string_view col_id) const;

 private:
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_ids_;
  std::vector<double> cells_;  // row-major
};

DistanceMatrix distance_matrix(std::span<const LabeledTriple> rows,
                               std::span<const LabeledTriple> cols);

/// 1-based competition rank of `col_id` within the row (1 = nearest). Tied
/// distances share the lower rank.
std::size_t rank_of(const DistanceMatrix& m, std::string_view row_id, std::string_view col_id);

struct RankedColumn {
  std::string col_id;
  double distance;
  std::size_t rank;
};

/// All columns of a row, nearest first, ties ordered by label.
std::vector<RankedColumn> ranked_columns(const DistanceMatrix& m, std::string_view row_id);

enum class Sign { minus, plus, neutral };

// One of the 8 sign corners of VAD space or the single neutral centre.
class Octant {
 public:
  static Octant neutral() noexcept { return Octant(Sign::neutral, Sign::neutral, Sign::neutral); }
  /// Throws Error(invalid_argument) if any sign is neutral.
  static Octant corner(Sign v, Sign a, Sign d);

  Sign v() const noexcept { return v_; }
  Sign a() const noexcept { return a_; }
  Sign d() const noexcept { return d_; }
  bool is_neutral() const noexcept { return v_ == Sign::neutral; }

  friend bool operator==(const Octant&, const Octant&) = default;

 private:
  Octant(Sign v, Sign a, Sign d) noexcept : v_(v), a_(a), d_(d) {}

  Sign v_;
  Sign a_;
  Sign d_;
};

inline constexpr double kDefaultNeutralBand = 0.1;

/// Requires a unit_0_1 triple and 0 <= neutral_band < 0.5. A single neutral
/// axis collapses the whole result to the neutral octant.
Octant octant_of(const VadTriple& t, double neutral_band = kDefaultNeutralBand);

/// "V+A-D-" style label, or "neutral".
std::string octant_signature(const Octant& o);
Octant parse_signature(std::string_view signature);

/// The nine octants in the order used by the situation-generation fixture.
const std::array<Octant, 9>& canonical_octants();

}  // namespace affect

#endif  // AFFECTKIT_AFFECT_SPACE_HPP_
