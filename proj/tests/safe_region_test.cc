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

#include "hullcheck/safe_region.h"

#include <algorithm>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "hullcheck/error.h"

namespace hullcheck {
namespace {

VariableSignature TwoPositive() {
  return VariableSignature::FromStrings({"s:+", "n:+"});
}

TEST(TransformTest, NegatedBound) {
  auto sig = VariableSignature::FromStrings({"ssize:+", "snum:+", "dsize:-"});
  Point p = Transform({{"ssize", 200}, {"snum", 60}, {"dsize", 256}}, sig);
  EXPECT_EQ(p, (Point{200, 60, kCMax - 256}));
}

TEST(TransformTest, IdentityAndEndpoint) {
  EXPECT_EQ(Transform({{"s", 3}, {"n", 9}}, TwoPositive()), (Point{3, 9}));
  auto sig = VariableSignature::FromStrings({"len:-"});
  EXPECT_EQ(Transform({{"len", static_cast<int64_t>(kCMax)}}, sig), Point{0});
}

TEST(TransformTest, BadInputsAreRegionInputErrors) {
  EXPECT_THROW(Transform({{"s", 3}}, TwoPositive()), RegionInputError);
  EXPECT_THROW(Transform({{"s", -1}, {"n", 0}}, TwoPositive()),
               RegionInputError);
  EXPECT_THROW(
      Transform({{"s", static_cast<int64_t>(kCMax) + 1}, {"n", 0}},
                TwoPositive()),
      RegionInputError);
}

TEST(SignatureTest, RoundTripAndValidation) {
  auto sig = VariableSignature::FromStrings({"a:+", "b:-"});
  EXPECT_EQ(sig.ToStrings(), (std::vector<std::string>{"a:+", "b:-"}));
  EXPECT_THROW(VariableSignature::FromStrings({"a:+", "a:-"}), UsageError);
  EXPECT_THROW(VariableSignature::FromStrings({"a"}), FormatError);
}

TEST(UnionRegionTest, InsertExamples) {
  UnionRegion r(TwoPositive());
  r = r.Insert({1, 855}).Insert({16, 60});
  EXPECT_EQ(r.frontier(), (std::vector<Point>{{1, 855}, {16, 60}}));

  UnionRegion dominated = UnionRegion(TwoPositive()).Insert({16, 60});
  EXPECT_EQ(dominated.Insert({10, 10}).frontier(), dominated.frontier());

  UnionRegion superseded = UnionRegion(TwoPositive()).Insert({10, 10});
  EXPECT_EQ(superseded.Insert({16, 60}).frontier(),
            (std::vector<Point>{{16, 60}}));
}

TEST(UnionRegionTest, QueryExamples) {
  UnionRegion r = UnionRegion(TwoPositive()).Insert({1, 855}).Insert({16, 60});
  EXPECT_FALSE(r.Query({8, 100}).safe());
  EXPECT_TRUE(r.Query({1, 500}).safe());
  EXPECT_FALSE(UnionRegion(TwoPositive()).Query({0, 0}).safe());
}

TEST(UnionRegionTest, FromFrontierRejectsChains) {
  EXPECT_THROW(UnionRegion::FromFrontier(TwoPositive(), {{1, 1}, {2, 2}}),
               FormatError);
}

TEST(HullRegionTest, AxisAndOriginAugmentationPointsPresent) {
  auto sig = VariableSignature::FromStrings({"a:+", "b:+", "c:+"});
  std::vector<Point> samples = {{200, 60, kCMax - 256},
                                {180, 20, kCMax - 256},
                                {150, 40, kCMax - 512}};
  HullRegion r = HullRegion::Build(samples, sig);
  for (const Point& p : std::vector<Point>{{200, 0, 0},
                                           {0, 60, 0},
                                           {0, 0, kCMax - 256},
                                           {0, 0, 0}}) {
    EXPECT_TRUE(r.Query(p).safe());
  }
  for (const Point& s : samples) EXPECT_TRUE(r.Query(s).safe());
  EXPECT_FALSE(r.Query({201, 0, 0}).safe());
}

TEST(HullRegionTest, DefangFacetFromTwoSamples) {
  HullRegion r = HullRegion::Build({{1, 855}, {16, 60}}, TwoPositive());
  auto ineqs = r.hull().FacetInequalities();
  EXPECT_NE(std::find(ineqs.begin(), ineqs.end(), Inequality{{53, 1}, 908}),
            ineqs.end());
  EXPECT_TRUE(r.Query({2, 700}).safe());
  EXPECT_FALSE(r.Query({10, 400}).safe());
  EXPECT_TRUE(r.Query({0, 0}).safe());
}

TEST(HullRegionTest, SingleSampleLattice) {
  HullRegion r = HullRegion::Build({{5, 5}}, TwoPositive());
  for (uint64_t i = 0; i <= 7; ++i) {
    for (uint64_t j = 0; j <= 7; ++j) {
      EXPECT_EQ(r.Query({i, j}).safe(), i <= 5 && j <= 5) << i << "," << j;
    }
  }
}

TEST(HullRegionTest, UpdateExamples) {
  HullRegion r = HullRegion::Build({{1, 855}, {16, 60}}, TwoPositive());
  OverflowSpec no_terms;
  EXPECT_EQ(r.Update({16, 60}, no_terms).hull(), r.hull());

  EXPECT_FALSE(r.Query({0, 870}).safe());
  HullRegion grown = r.Update({0, 900}, no_terms);
  EXPECT_TRUE(grown.Query({0, 870}).safe());
  EXPECT_TRUE(grown.Query({1, 855}).safe());

  OverflowSpec wrap{{static_cast<int64_t>(kCMax), 1}, kCMax};
  HullRegion guarded = r.Update({0, 900}, wrap);
  EXPECT_EQ(guarded.hull(), r.hull());
  EXPECT_EQ(guarded.samples(), r.samples());
}

TEST(HullRegionTest, EmptyRegionIsUnknownUntilUpdated) {
  HullRegion r(TwoPositive());
  EXPECT_FALSE(r.Query({0, 0}).safe());
  HullRegion first = r.Update({3, 4}, {});
  EXPECT_TRUE(first.Query({2, 1}).safe());
}

TEST(OverflowRejectTest, Examples) {
  EXPECT_TRUE(OverflowReject({static_cast<int64_t>(kCMax), 1}, kCMax));
  EXPECT_FALSE(OverflowReject({100, 23}, kCMax));
  EXPECT_TRUE(OverflowReject({int64_t{1} << 31, int64_t{1} << 31}, kCMax));
  EXPECT_FALSE(OverflowReject({}, kCMax));
}

std::vector<Point> RandomPoints(std::mt19937_64& rng, size_t d, size_t n,
                                uint64_t hi) {
  std::uniform_int_distribution<uint64_t> coord(0, hi);
  std::vector<Point> out;
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint64_t> c(d);
    for (auto& x : c) x = coord(rng);
    out.emplace_back(std::move(c));
  }
  return out;
}

VariableSignature Positive(size_t d) {
  std::vector<SignatureVar> vars;
  for (size_t j = 0; j < d; ++j) vars.push_back({"v" + std::to_string(j)});
  return VariableSignature(vars);
}

TEST(SafeRegionPropertyTest, HullContainsUnionAndIsDownwardClosed) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    size_t d = 1 + trial % 4;
    auto samples = RandomPoints(rng, d, 1 + rng() % 20, 50);
    UnionRegion u(Positive(d));
    for (const Point& p : samples) u = u.Insert(p);
    HullRegion h = HullRegion::Build(samples, Positive(d));
    for (const Point& q : RandomPoints(rng, d, 40, 60)) {
      if (u.Query(q).safe()) {
        EXPECT_TRUE(h.Query(q).safe());
      }
      if (h.Query(q).safe()) {
        std::vector<uint64_t> lower = q.coords();
        for (auto& x : lower) x = x == 0 ? 0 : rng() % (x + 1);
        EXPECT_TRUE(h.Query(Point(lower)).safe());
      }
    }
  }
}

TEST(SafeRegionPropertyTest, UpdatesAreMonotoneAndIdempotent) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    size_t d = 1 + trial % 3;
    auto samples = RandomPoints(rng, d, 1 + rng() % 6, 40);
    HullRegion h = HullRegion::Build(samples, Positive(d));
    Point extra = RandomPoints(rng, d, 1, 60)[0];
    HullRegion grown = h.Update(extra, {});
    HullRegion again = grown.Update(extra, {});
    EXPECT_TRUE(grown.Query(extra).safe());
    for (const Point& q : RandomPoints(rng, d, 40, 60)) {
      if (h.Query(q).safe()) {
        EXPECT_TRUE(grown.Query(q).safe());
      }
      EXPECT_EQ(again.Query(q).safe(), grown.Query(q).safe());
    }
  }
}

}  // namespace
}  // namespace hullcheck
