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


#include "affectkit/affect_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "affectkit/error.hpp"
#include "affectkit/text.hpp"

namespace affect {

std::string_view to_string(Scale scale) noexcept {
  switch (scale) {
    case Scale::anet_1_9: return "anet_1_9";
    case Scale::russell_m1_1: return "russell_m1_1";
    case Scale::unit_0_1: return "unit_0_1";
  }
  return "unknown";
}

Scale parse_scale(std::string_view name) {
  const auto trimmed = text::trim(name);
  for (auto s : {Scale::anet_1_9, Scale::russell_m1_1, Scale::unit_0_1}) {
    if (trimmed == to_string(s)) return s;
  }
  throw Error(ErrorKind::invalid_argument, "unknown scale '" + std::string(name) + "'");
}

VadTriple::VadTriple(double valence, double arousal, double dominance, Scale scale)
    : components_{valence, arousal, dominance}, scale_(scale) {
  static constexpr const char* kNames[] = {"valence", "arousal", "dominance"};
  const auto [lo, hi] = bounds(scale);
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = components_[i];
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::out_of_range, std::string(kNames[i]) + " is not finite");
    }
    if (x < lo || x > hi) {
      throw Error(ErrorKind::out_of_range,
                  std::string(kNames[i]) + " " + text::format_number(x) + " outside [" +
                      text::format_number(lo) + ", " + text::format_number(hi) + "] of scale " +
                      std::string(to_string(scale)));
    }
  }
}

double rescale_value(double x, Scale from, Scale to) noexcept {
  const auto src = bounds(from);
  const auto dst = bounds(to);
  return (x - src.min) / (src.max - src.min) * (dst.max - dst.min) + dst.min;
}

VadTriple rescale(const VadTriple& t, Scale target) {
  if (t.scale() == target) return t;
  const auto dst = bounds(target);
  // Clamp away the last-ulp overshoot the affine map can produce at the ends.
  auto map = [&](double x) { return std::clamp(rescale_value(x, t.scale(), target), dst.min, dst.max); };
  return VadTriple(map(t.v()), map(t.a()), map(t.d()), target);
}

double euclidean_distance(const VadTriple& a, const VadTriple& b) {
  if (a.scale() != b.scale()) {
    throw Error(ErrorKind::scale_mismatch,
                "cannot measure distance between " + std::string(to_string(a.scale())) + " and " +
                    std::string(to_string(b.scale())) + " triples; rescale first");
  }
  const double dv = a.v() - b.v();
  const double da = a.a() - b.a();
  const double dd = a.d() - b.d();
  return std::sqrt(dv * dv + da * da + dd * dd);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                               std::vector<double> cells)
    : row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids)), cells_(std::move(cells)) {
  if (row_ids_.empty() || col_ids_.empty()) {
    throw Error(ErrorKind::invalid_argument, "distance matrix needs at least one row and one column");
  }
  if (cells_.size() != row_ids_.size() * col_ids_.size()) {
    throw Error(ErrorKind::invalid_argument, "distance matrix cell count does not match its shape");
  }
  auto check_unique = [](const std::vector<std::string>& ids, const char* what) {
    std::set<std::string_view> seen;
    for (const auto& id : ids) {
      if (!seen.insert(id).second) {
        throw Error(ErrorKind::duplicate, std::string("duplicate ") + what + " '" + id + "'");
      }
    }
  };
  check_unique(row_ids_, "row id");
  check_unique(col_ids_, "column label");
  for (double c : cells_) {
    if (!(c >= 0.0)) throw Error(ErrorKind::invalid_argument, "distance matrix cells must be non-negative");
  }
}

double DistanceMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows() || col >= cols()) throw Error(ErrorKind::out_of_range, "distance matrix index out of range");
  return cells_[row * cols() + col];
}

double DistanceMatrix::at(std::string_view row_id, std::string_view col_id) const {
  return at(row_index(row_id), col_index(col_id));
}

std::span<const double> DistanceMatrix::row(std::size_t row) const {
  if (row >= rows()) throw Error(ErrorKind::out_of_range, "distance matrix row out of range");
  return std::span<const double>(cells_).subspan(row * cols(), cols());
}

std::size_t DistanceMatrix::row_index(std::string_view row_id) const {
  const auto it = std::find(row_ids_.begin(), row_ids_.end(), row_id);
  if (it == row_ids_.end()) throw Error(ErrorKind::not_found, "unknown row id '" + std::string(row_id) + "'");
  return static_cast<std::size_t>(it - row_ids_.begin());
}

std::size_t DistanceMatrix::col_index(std::string_view col_id) const {
  const auto it = std::find(col_ids_.begin(), col_ids_.end(), col_id);
  if (it == col_ids_.end()) {
    throw Error(ErrorKind::not_found, "unknown column label '" + std::string(col_id) + "'");
  }
  return static_cast<std::size_t>(it - col_ids_.begin());
}

DistanceMatrix distance_matrix(std::span<const LabeledTriple> rows, std::span<const LabeledTriple> cols) {
  if (rows.empty() || cols.empty()) {
    throw Error(ErrorKind::invalid_argument, "distance matrix needs at least one row and one column");
  }
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  std::vector<double> cells;
  row_ids.reserve(rows.size());
  col_ids.reserve(cols.size());
  cells.reserve(rows.size() * cols.size());
  for (const auto& [id, t] : rows) row_ids.push_back(id);
  for (const auto& [label, t] : cols) col_ids.push_back(label);
  for (const auto& [id, r] : rows) {
    for (const auto& [label, c] : cols) cells.push_back(euclidean_distance(r, c));
  }
  return DistanceMatrix(std::move(row_ids), std::move(col_ids), std::move(cells));
}

std::size_t rank_of(const DistanceMatrix& m, std::string_view row_id, std::string_view col_id) {
  const auto row = m.row(m.row_index(row_id));
  const double target = row[m.col_index(col_id)];
  return 1 + static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [&](double x) { return x < target; }));
}

std::vector<RankedColumn> ranked_columns(const DistanceMatrix& m, std::string_view row_id) {
  const auto row = m.row(m.row_index(row_id));
  std::vector<RankedColumn> out;
  out.reserve(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out.push_back({m.col_ids()[j], row[j], 0});
  std::sort(out.begin(), out.end(), [](const RankedColumn& x, const RankedColumn& y) {
    return x.distance != y.distance ? x.distance < y.distance : x.col_id < y.col_id;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = (i > 0 && out[i].distance == out[i - 1].distance) ? out[i - 1].rank : i + 1;
  }
  return out;
}

Octant Octant::corner(Sign v, Sign a, Sign d) {
  if (v == Sign::neutral || a == Sign::neutral || d == Sign::neutral) {
    throw Error(ErrorKind::invalid_argument, "octant corners take only plus/minus signs");
  }
  return Octant(v, a, d);
}

Octant octant_of(const VadTriple& t, double neutral_band) {
  if (t.scale() != Scale::unit_0_1) {
    throw Error(ErrorKind::scale_mismatch, "octant_of expects a unit_0_1 triple");
  }
  if (!(neutral_band >= 0.0 && neutral_band < 0.5)) {
    throw Error(ErrorKind::invalid_argument, "neutral band must lie in [0, 0.5)");
  }
  auto sign = [&](double x) {
    if (x < 0.5 - neutral_band) return Sign::minus;
    if (x > 0.5 + neutral_band) return Sign::plus;
    return Sign::neutral;
  };
  const Sign v = sign(t.v());
  const Sign a = sign(t.a());
  const Sign d = sign(t.d());
  if (v == Sign::neutral || a == Sign::neutral || d == Sign::neutral) return Octant::neutral();
  return Octant::corner(v, a, d);
}

std::string octant_signature(const Octant& o) {
  if (o.is_neutral()) return "neutral";
  auto ch = [](Sign s) { return s == Sign::plus ? '+' : '-'; };
  return std::string{'V', ch(o.v()), 'A', ch(o.a()), 'D', ch(o.d())};
}

Octant parse_signature(std::string_view signature) {
  const auto s = text::trim(signature);
  if (s == "neutral") return Octant::neutral();
  auto sign = [&](char c) {
    if (c == '+') return Sign::plus;
    if (c == '-') return Sign::minus;
    throw Error(ErrorKind::invalid_argument, "bad octant signature '" + std::string(signature) + "'");
  };
  if (s.size() != 6 || s[0] != 'V' || s[2] != 'A' || s[4] != 'D') {
    throw Error(ErrorKind::invalid_argument, "bad octant signature '" + std::string(signature) + "'");
  }
  return Octant::corner(sign(s[1]), sign(s[3]), sign(s[5]));
}

const std::array<Octant, 9>& canonical_octants() {
  using enum Sign;
  static const std::array<Octant, 9> kOctants = {
      Octant::corner(plus, minus, minus), Octant::corner(minus, plus, minus),
      Octant::corner(minus, minus, plus), Octant::corner(plus, plus, minus),
      Octant::corner(minus, plus, plus),  Octant::corner(plus, minus, plus),
      Octant::corner(plus, plus, plus),   Octant::corner(minus, minus, minus),
      Octant::neutral(),
  };
  return kOctants;
}

}  // namespace affect
