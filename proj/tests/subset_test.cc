// Copyright 2026 The Authors.
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

#include "sfmlb/subset.h"

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "sfmlb/errors.h"

namespace sfmlb {
namespace {

Subset S(std::size_t n, std::initializer_list<std::size_t> items) {
  return Subset::FromIndices(n, items);
}

TEST(GroundConfigTest, DerivedSizes) {
  const GroundConfig c(10, 2);
  EXPECT_EQ(c.ell(), 2u);
  EXPECT_EQ(c.effective_size(), 8u);
  EXPECT_TRUE(c.has_dummies());
  EXPECT_FALSE(GroundConfig(8, 2).has_dummies());
}

TEST(GroundConfigTest, RejectsBadParameters) {
  EXPECT_THROW(GroundConfig(4, 0), UsageError);
  EXPECT_THROW(GroundConfig(4, 3), UsageError);
  EXPECT_THROW(GroundConfig(2048, 1), UsageError);
  EXPECT_NO_THROW(GroundConfig(1024, 1));
}

TEST(RelateTest, Examples) {
  EXPECT_EQ(Relate(S(3, {0}), S(3, {0})), Relation::kEqual);
  EXPECT_EQ(Relate(S(3, {}), S(3, {0})), Relation::kStrictSubset);
  EXPECT_EQ(Relate(S(3, {1}), S(3, {0, 2})), Relation::kIncomparable);
  EXPECT_EQ(Relate(S(3, {0, 2}), S(3, {2})), Relation::kStrictSuperset);
}

TEST(RelateTest, MismatchedGroundThrows) {
  EXPECT_THROW(Relate(S(3, {0}), S(4, {0})), UsageError);
  Subset a(3);
  EXPECT_THROW(a |= Subset(5), UsageError);
}

TEST(SubsetAlgebraTest, Examples) {
  EXPECT_EQ(S(3, {0, 1}) & S(3, {1, 2}), S(3, {1}));
  EXPECT_EQ(S(3, {0, 1}) | Subset(3), S(3, {0, 1}));
  EXPECT_EQ((S(3, {0, 1, 2}) - S(3, {1})).cardinality(), 2u);
}

TEST(SubsetAlgebraTest, ExhaustiveIdentitiesAtTen) {
  const std::size_t n = 10;
  for (std::uint64_t x = 0; x < (1u << n); ++x) {
    const Subset s = Subset::FromBits(n, x);
    for (std::uint64_t y = 0; y < (1u << n); ++y) {
      const Subset t = Subset::FromBits(n, y);
      ASSERT_EQ((s | t).cardinality() + (s & t).cardinality(),
                s.cardinality() + t.cardinality());
      const Relation st = Relate(s, t);
      const Relation ts = Relate(t, s);
      ASSERT_EQ(st == Relation::kStrictSubset, ts == Relation::kStrictSuperset);
      ASSERT_EQ(st == Relation::kEqual, ts == Relation::kEqual);
    }
  }
}

TEST(SubsetTest, WideGroundAcrossWords) {
  Subset s(1000);
  s.insert(0);
  s.insert(63);
  s.insert(64);
  s.insert(999);
  EXPECT_EQ(s.cardinality(), 4u);
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{0, 63, 64, 999}));
  EXPECT_EQ(s.lowest(2), (std::vector<std::size_t>{0, 63}));
  EXPECT_TRUE(s.contains(999));
  s.erase(64);
  EXPECT_FALSE(s.contains(64));
  EXPECT_EQ(Subset::Full(1000).cardinality(), 1000u);
  EXPECT_EQ((Subset::Full(1000) - s).cardinality(), 997u);
  EXPECT_EQ(Subset::Prefix(130, 70).cardinality(), 70u);
  EXPECT_THROW(s.lowest(5), UsageError);
}

TEST(SubsetTest, ToStringAndOrder) {
  EXPECT_EQ(S(5, {0, 2, 4}).ToString(), "{0,2,4}");
  EXPECT_EQ(Subset(5).ToString(), "{}");
  EXPECT_LT(S(5, {4}), S(5, {0, 1, 2, 3}) | S(5, {4}));
  EXPECT_LT(S(5, {0, 1, 2, 3}), S(5, {4}));
}

TEST(EnumerateSubsetsTest, SmallCases) {
  std::vector<Subset> two(EnumerateSubsets(2).begin(),
                          EnumerateSubsets(2).end());
  ASSERT_EQ(two.size(), 4u);
  EXPECT_EQ(two[0], S(2, {}));
  EXPECT_EQ(two[1], S(2, {0}));
  EXPECT_EQ(two[2], S(2, {1}));
  EXPECT_EQ(two[3], S(2, {0, 1}));

  std::vector<Subset> one(EnumerateSubsets(1).begin(),
                          EnumerateSubsets(1).end());
  EXPECT_EQ(one, (std::vector<Subset>{S(1, {}), S(1, {0})}));

  std::vector<Subset> three(EnumerateSubsets(3).begin(),
                            EnumerateSubsets(3).end());
  ASSERT_EQ(three.size(), 8u);
  EXPECT_EQ(three.front(), S(3, {}));
  EXPECT_EQ(three.back(), S(3, {0, 1, 2}));
}

TEST(EnumerateSubsetsTest, DistinctAndCapped) {
  std::set<std::string> seen;
  for (const Subset& s : EnumerateSubsets(10)) seen.insert(s.ToString());
  EXPECT_EQ(seen.size(), 1024u);
  EXPECT_THROW(EnumerateSubsets(25), UsageError);
  EXPECT_EQ(EnumerateSubsets(GroundConfig(6, 1)).size(), 64u);
}

}  // namespace
}  // namespace sfmlb
