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

#include <algorithm>
#include <random>
#include <set>

#include "affectkit/affect_space.hpp"
#include "affectkit/error.hpp"

namespace affect {
namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::io;
}

TEST(VadTriple, RejectsOutOfBoundsAndNonFinite) {
  EXPECT_NO_THROW(VadTriple(1.0, 9.0, 5.0, Scale::anet_1_9));
  EXPECT_EQ(kind_of([] { VadTriple(0.5, 9.0, 5.0, Scale::anet_1_9); }), ErrorKind::out_of_range);
  EXPECT_EQ(kind_of([] { VadTriple(0.5, 1.2, 0.5, Scale::unit_0_1); }), ErrorKind::out_of_range);
  EXPECT_EQ(kind_of([] { VadTriple(std::nan(""), 0.5, 0.5, Scale::unit_0_1); }), ErrorKind::out_of_range);
}

TEST(Rescale, MapsScaleEndpointsAndMidpoints) {
  const auto t = rescale(VadTriple(1.0, 5.0, 9.0, Scale::anet_1_9), Scale::unit_0_1);
  EXPECT_DOUBLE_EQ(t.v(), 0.0);
  EXPECT_DOUBLE_EQ(t.a(), 0.5);
  EXPECT_DOUBLE_EQ(t.d(), 1.0);
  EXPECT_DOUBLE_EQ(rescale_value(0.0, Scale::russell_m1_1, Scale::unit_0_1), 0.5);
  EXPECT_DOUBLE_EQ(rescale_value(0.25, Scale::unit_0_1, Scale::anet_1_9), 3.0);
  EXPECT_EQ(rescale(t, Scale::unit_0_1), t);
}

TEST(Scale, NamesRoundTrip) {
  for (auto s : {Scale::unit_0_1, Scale::anet_1_9, Scale::russell_m1_1}) EXPECT_EQ(parse_scale(to_string(s)), s);
  EXPECT_EQ(kind_of([] { parse_scale("likert"); }), ErrorKind::invalid_argument);
}

TEST(Distance, EuclideanAndScaleMismatch) {
  const VadTriple a(0.0, 0.0, 0.0, Scale::unit_0_1);
  const VadTriple b(1.0, 1.0, 1.0, Scale::unit_0_1);
  EXPECT_DOUBLE_EQ(euclidean_distance(a, b), std::sqrt(3.0));
  EXPECT_EQ(kind_of([&] { euclidean_distance(a, VadTriple(1, 1, 1, Scale::anet_1_9)); }), ErrorKind::scale_mismatch);
}

TEST(DistanceMatrix, ValidatesShapeAndIds) {
  EXPECT_EQ(kind_of([] { DistanceMatrix({"r"}, {"a", "b"}, {1.0}); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { DistanceMatrix({"r"}, {"a", "a"}, {1.0, 2.0}); }), ErrorKind::duplicate);
  EXPECT_EQ(kind_of([] { DistanceMatrix({"r"}, {"a"}, {-1.0}); }), ErrorKind::invalid_argument);
  const DistanceMatrix m({"r"}, {"a", "b"}, {1.0, 2.0});
  EXPECT_EQ(kind_of([&] { m.at("r", "c"); }), ErrorKind::not_found);
  EXPECT_EQ(kind_of([&] { m.at("x", "a"); }), ErrorKind::not_found);
  EXPECT_DOUBLE_EQ(m.at("r", "b"), 2.0);
}

TEST(Rank, TiesShareTheLowerRank) {
  const DistanceMatrix m({"r"}, {"a", "b", "c", "d"}, {0.3, 0.1, 0.3, 0.5});
  EXPECT_EQ(rank_of(m, "r", "b"), 1u);
  EXPECT_EQ(rank_of(m, "r", "a"), 2u);
  EXPECT_EQ(rank_of(m, "r", "c"), 2u);
  EXPECT_EQ(rank_of(m, "r", "d"), 4u);
  const auto ranked = ranked_columns(m, "r");
  ASSERT_EQ(ranked.size(), 4u);
  EXPECT_EQ(ranked[0].col_id, "b");
  EXPECT_EQ(ranked[1].col_id, "a");
  EXPECT_EQ(ranked[2].col_id, "c");
  EXPECT_EQ(ranked[2].rank, 2u);
}

// Oracle: rank = 1 + number of columns strictly nearer, checked against a
// full sort of the row.
TEST(Rank, MatchesSortOracleOnRandomMatrices) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledTriple> rows, cols;
    for (int i = 0; i < 3; ++i) rows.emplace_back("s" + std::to_string(i), VadTriple(unit(rng), unit(rng), unit(rng), Scale::unit_0_1));
    for (int j = 0; j < 20; ++j) {
      // Coarse values make ties likely.
      auto q = [&] { return std::round(unit(rng) * 4) / 4; };
      cols.emplace_back("w" + std::to_string(j), VadTriple(q(), q(), q(), Scale::unit_0_1));
    }
    const auto m = distance_matrix(rows, cols);
    for (const auto& [rid, rv] : rows) {
      std::vector<double> sorted;
      for (const auto& [cid, cv] : cols) sorted.push_back(euclidean_distance(rv, cv));
      std::sort(sorted.begin(), sorted.end());
      for (const auto& [cid, cv] : cols) {
        const double d = euclidean_distance(rv, cv);
        const auto first = std::lower_bound(sorted.begin(), sorted.end(), d) - sorted.begin();
        EXPECT_EQ(rank_of(m, rid, cid), static_cast<std::size_t>(first) + 1);
      }
    }
  }
}

TEST(Octant, SignsBandAndNeutralCollapse) {
  EXPECT_EQ(octant_of(VadTriple(0.9, 0.1, 0.2, Scale::unit_0_1)), Octant::corner(Sign::plus, Sign::minus, Sign::minus));
  EXPECT_EQ(octant_of(VadTriple(0.9, 0.55, 0.2, Scale::unit_0_1)), Octant::neutral());
  EXPECT_EQ(octant_of(VadTriple(0.9, 0.55, 0.2, Scale::unit_0_1), 0.0),
            Octant::corner(Sign::plus, Sign::plus, Sign::minus));
  EXPECT_EQ(kind_of([] { octant_of(VadTriple(5, 5, 5, Scale::anet_1_9)); }), ErrorKind::scale_mismatch);
  EXPECT_EQ(kind_of([] { octant_of(VadTriple(0.5, 0.5, 0.5, Scale::unit_0_1), 0.5); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { Octant::corner(Sign::plus, Sign::neutral, Sign::minus); }), ErrorKind::invalid_argument);
}

TEST(Octant, CanonicalSetHasEightCornersAndNeutral) {
  const auto& all = canonical_octants();
  std::set<std::string> signatures;
  for (const auto& o : all) {
    signatures.insert(octant_signature(o));
    EXPECT_EQ(parse_signature(octant_signature(o)), o);
  }
  EXPECT_EQ(signatures.size(), 9u);
  EXPECT_TRUE(signatures.contains("neutral"));
  EXPECT_EQ(octant_signature(all.front()), "V+A-D-");
  EXPECT_EQ(kind_of([] { parse_signature("V+A-A+"); }), ErrorKind::invalid_argument);
}

}  // namespace
}  // namespace affect
