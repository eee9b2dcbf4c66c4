/*
 * Copyright (C) 2026 The hullcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hullcheck/geometry.h"

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "hullcheck/error.h"

namespace hullcheck {
namespace {

Hull DefangHull() {
  return BuildHull({{1, 855}, {16, 60}, {16, 0}, {0, 855}, {0, 0}});
}

TEST(DominatesTest, Examples) {
  EXPECT_TRUE(Dominates({16, 60}, {16, 60}));
  EXPECT_TRUE(Dominates({16, 60}, {0, 60}));
  EXPECT_FALSE(Dominates({16, 60}, {1, 855}));
  EXPECT_FALSE(Dominates({5, 5, 5}, {5, 5, 6}));
}

TEST(DominatesTest, DimensionMismatchIsUsageError) {
  EXPECT_THROW(Dominates({1, 2}, {1, 2, 3}), UsageError);
}

TEST(DominatesTest, PartialOrder) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<uint64_t> coord(0, 3);
  auto random_point = [&] {
    return Point({coord(rng), coord(rng), coord(rng)});
  };
  for (int trial = 0; trial < 2000; ++trial) {
    Point a = random_point(), b = random_point(), c = random_point();
    EXPECT_TRUE(Dominates(a, a));
    if (Dominates(a, b) && Dominates(b, a)) {
      EXPECT_EQ(a, b);
    }
    if (Dominates(a, b) && Dominates(b, c)) {
      EXPECT_TRUE(Dominates(a, c));
    }
  }
}

TEST(PointTest, RejectsOutOfRangeCoordinate) {
  EXPECT_THROW(Point({kCMax + 1}), UsageError);
  EXPECT_NO_THROW(Point({kCMax}));
}

TEST(BuildHullTest, SquareDropsInteriorPoint) {
  Hull h = BuildHull({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}});
  EXPECT_EQ(h.rank(), 2u);
  EXPECT_EQ(h.vertices().size(), 4u);
  EXPECT_EQ(std::count(h.vertices().begin(), h.vertices().end(), Point{1, 1}),
            0);
  EXPECT_EQ(h.facets().size(), 4u);
}

TEST(BuildHullTest, DefangFacet) {
  Hull h = DefangHull();
  std::vector<Inequality> ineqs = h.FacetInequalities();
  Inequality want{{53, 1}, 908};
  EXPECT_NE(std::find(ineqs.begin(), ineqs.end(), want), ineqs.end());
  EXPECT_EQ(h.vertices().size(), 5u);
}

TEST(BuildHullTest, CollinearIsSegment) {
  Hull h = BuildHull({{0, 0}, {1, 1}, {2, 2}});
  EXPECT_EQ(h.rank(), 1u);
  std::vector<Point> want = {{0, 0}, {2, 2}};
  EXPECT_EQ(h.vertices(), want);
}

TEST(BuildHullTest, SingletonIsRankZero) {
  Hull h = BuildHull({{5, 7, 9}});
  EXPECT_EQ(h.rank(), 0u);
  EXPECT_TRUE(h.Contains({5, 7, 9}));
  EXPECT_FALSE(h.Contains({5, 7, 8}));
}

TEST(BuildHullTest, DimensionCap) {
  std::vector<uint64_t> nine(9, 1);
  EXPECT_THROW(BuildHull({Point(nine)}), CapabilityError);
  EXPECT_THROW(BuildHull({}), UsageError);
  EXPECT_THROW(BuildHull({{1, 2}, {1, 2, 3}}), UsageError);
}

TEST(BuildHullTest, NonExtremeCoplanarPointsRemoved) {
  // (1,0) lies on the bottom edge; (8,4) on the edge (16,0)-(0,8).
  Hull h = BuildHull({{0, 0}, {1, 0}, {16, 0}, {8, 4}, {0, 8}});
  std::vector<Point> want = {{0, 0}, {0, 8}, {16, 0}};
  EXPECT_EQ(h.vertices(), want);
}

TEST(ContainsTest, Examples) {
  Hull square = BuildHull({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}});
  EXPECT_TRUE(Contains(square, {1, 1}));
  EXPECT_FALSE(Contains(square, {3, 1}));

  Hull defang = DefangHull();
  EXPECT_TRUE(Contains(defang, {16, 60}));
  EXPECT_FALSE(Contains(defang, {10, 400}));
  EXPECT_TRUE(Contains(defang, {2, 700}));

  Hull segment = BuildHull({{0, 0}, {1, 1}, {2, 2}});
  EXPECT_FALSE(Contains(segment, {1, 2}));
  EXPECT_TRUE(Contains(segment, {1, 1}));
  EXPECT_FALSE(Contains(segment, {3, 3}));
  EXPECT_THROW(Contains(segment, {1, 1, 1}), UsageError);
}

TEST(ContainsTest, LowRankInHigherDimension) {
  // A triangle lying in the plane z = x + y.
  Hull h = BuildHull({{0, 0, 0}, {4, 0, 4}, {0, 4, 4}});
  EXPECT_EQ(h.rank(), 2u);
  EXPECT_TRUE(h.Contains({1, 1, 2}));
  EXPECT_FALSE(h.Contains({1, 1, 3}));
  EXPECT_FALSE(h.Contains({3, 3, 6}));
  auto eqs = h.frame().Equalities();
  ASSERT_EQ(eqs.size(), 1u);
}

TEST(LinearFunctionalBoundCheckTest, Examples) {
  Hull h = DefangHull();
  EXPECT_TRUE(LinearFunctionalBoundCheck(h, {53, 1}, 908));
  EXPECT_FALSE(LinearFunctionalBoundCheck(h, {53, 1}, 900));
  EXPECT_TRUE(LinearFunctionalBoundCheck(h, {0, 0}, 0));
  EXPECT_THROW(LinearFunctionalBoundCheck(h, {1}, 0), UsageError);
}

// Independent membership oracle for full-rank point sets: every hyperplane
// through D affinely independent input points that has all input points on
// one side is a valid constraint, and the facets are among them.
bool OracleContains(const std::vector<Point>& pts, const Point& q) {
  const size_t d = q.dimension();
  std::vector<size_t> idx(d);
  std::function<bool(size_t, size_t)> rec = [&](size_t pos,
                                                size_t start) -> bool {
    if (pos == d) {
      std::vector<std::vector<BigInt>> rows;
      for (size_t i = 1; i < d; ++i) {
        std::vector<BigInt> row(d);
        for (size_t j = 0; j < d; ++j) {
          row[j] = BigInt(pts[idx[i]][j]) - BigInt(pts[idx[0]][j]);
        }
        rows.push_back(row);
      }
      std::vector<BigInt> n = GeneralizedCross(rows, d);
      if (std::all_of(n.begin(), n.end(), [](const BigInt& x) { return x == 0; }))
        return true;
      auto side = [&](const Point& p) {
        BigInt s = 0;
        for (size_t j = 0; j < d; ++j) {
          s += n[j] * (BigInt(p[j]) - BigInt(pts[idx[0]][j]));
        }
        return s;
      };
      bool pos_side = false, neg_side = false;
      for (const Point& p : pts) {
        BigInt s = side(p);
        if (s > 0) pos_side = true;
        if (s < 0) neg_side = true;
      }
      if (pos_side && neg_side) return true;
      BigInt s = side(q);
      if (pos_side && s < 0) return false;
      if (neg_side && s > 0) return false;
      return true;
    }
    for (size_t i = start; i < pts.size(); ++i) {
      idx[pos] = i;
      if (!rec(pos + 1, i + 1)) return false;
    }
    return true;
  };
  return rec(0, 0);
}

TEST(ContainsTest, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    size_t d = 2 + trial % 3;
    size_t n = d + 1 + rng() % 6;
    std::uniform_int_distribution<uint64_t> coord(0, 12);
    std::vector<Point> pts;
    for (size_t i = 0; i < n; ++i) {
      std::vector<uint64_t> c(d);
      for (auto& x : c) x = coord(rng);
      pts.emplace_back(c);
    }
    Hull h = BuildHull(pts);
    if (h.rank() != d) continue;
    for (int q = 0; q < 60; ++q) {
      std::vector<uint64_t> c(d);
      for (auto& x : c) x = coord(rng);
      Point p(c);
      ASSERT_EQ(h.Contains(p), OracleContains(pts, p)) << "trial " << trial;
    }
  }
}

TEST(BuildHullTest, VertexClosureAndOrderIndependence) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    size_t d = 1 + trial % 5;
    std::uniform_int_distribution<uint64_t> coord(0, 1000000);
    std::vector<Point> pts;
    size_t n = 1 + rng() % 12;
    for (size_t i = 0; i < n; ++i) {
      std::vector<uint64_t> c(d);
      for (auto& x : c) x = coord(rng);
      pts.emplace_back(c);
    }
    Hull h = BuildHull(pts);
    for (const Point& p : pts) EXPECT_TRUE(h.Contains(p));
    std::vector<Point> shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(BuildHull(shuffled), h);
    Hull loaded = Hull::FromParts(h.frame(), h.vertices(), h.facets());
    EXPECT_EQ(loaded, h);
  }
}

TEST(BuildHullTest, FromPartsRejectsOutwardNormal) {
  Hull h = DefangHull();
  std::vector<Facet> facets = h.facets();
  for (BigInt& x : facets[0].normal) x = -x;
  facets[0].offset = -facets[0].offset;
  EXPECT_THROW(Hull::FromParts(h.frame(), h.vertices(), facets), FormatError);
}

TEST(LinearBoundTest, ContainedPointsRespectVertexBounds) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    size_t d = 1 + trial % 5;
    std::uniform_int_distribution<uint64_t> coord(0, 1000000);
    std::vector<Point> pts;
    size_t n = 1 + rng() % 8;
    for (size_t i = 0; i < n; ++i) {
      std::vector<uint64_t> c(d);
      for (auto& x : c) x = coord(rng);
      pts.emplace_back(c);
    }
    Hull h = BuildHull(pts);
    std::uniform_int_distribution<int> beta_dist(-50, 50);
    std::vector<Rational> beta(d);
    for (auto& b : beta) b = Rational(beta_dist(rng), 1 + rng() % 7);
    Rational c = 0;
    bool first = true;
    for (const Point& v : h.vertices()) {
      Rational s = 0;
      for (size_t j = 0; j < d; ++j) s += beta[j] * Rational(BigInt(v[j]));
      if (first || s > c) c = s;
      first = false;
    }
    ASSERT_TRUE(LinearFunctionalBoundCheck(h, beta, c));
    for (int q = 0; q < 50; ++q) {
      std::vector<uint64_t> coords(d);
      for (auto& x : coords) x = coord(rng);
      Point p(coords);
      if (!h.Contains(p)) continue;
      Rational s = 0;
      for (size_t j = 0; j < d; ++j) s += beta[j] * Rational(BigInt(p[j]));
      EXPECT_LE(s, c);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

}  // namespace
}  // namespace hullcheck
