// Copyright 2026 The likertib Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>

#include <gtest/gtest.h>

#include "likertib/agreement.hpp"

namespace likertib {
namespace {

std::vector<std::string> ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("item" + std::to_string(i));
  return out;
}

Partition relabel(const Partition& p, const std::vector<std::size_t>& map) {
  std::vector<std::size_t> g;
  for (auto x : p.groups) g.push_back(map[x]);
  return Partition(p.items, g, p.group_count);
}

// 18 items in three blocks of six; item 12 moved to the first cluster
std::pair<Partition, Partition> eighteen_items() {
  std::vector<std::size_t> f, c;
  for (std::size_t i = 0; i < 18; ++i) f.push_back(i / 6);
  c = f;
  c[11] = 0;
  return {Partition(ids(18), f, 3), Partition(ids(18), c, 3)};
}

TEST(RandIndex, HandEnumeratedPairs) {
  // {1,2}{3,4} vs {1,3}{2,4}: only (1,4) and (2,3) are apart in both
  EXPECT_NEAR(rand_index({0, 0, 1, 1}, {0, 1, 0, 1}), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(rand_index({0, 1, 2}, {2, 0, 1}), 1.0);
  EXPECT_EQ(rand_index({0}, {0}), 1.0);
}

TEST(Compare, IdenticalPartitions) {
  const Partition p(ids(6), {0, 0, 1, 1, 2, 2}, 3);
  const auto r = compare(p, p);
  EXPECT_TRUE(r.exact_match);
  EXPECT_EQ(r.pairwise_agreement, 1.0);
  EXPECT_EQ(r.concordant_items, ids(6));
  EXPECT_EQ(r.matched_group_pairs.size(), 3u);
}

TEST(Compare, SingleMovedItemIsTheOnlyDiscordant) {
  const auto [f, c] = eighteen_items();
  const auto r = compare(f, c);
  EXPECT_FALSE(r.exact_match);
  EXPECT_EQ(r.discordant_items, std::vector<std::string>{"item12"});
  EXPECT_EQ(r.concordant_items.size(), 17u);
}

TEST(Compare, RandIndexOfCrossedPairs) {
  const std::vector<std::string> four{"1", "2", "3", "4"};
  const auto r = compare(Partition(four, {0, 0, 1, 1}, 2), Partition(four, {0, 1, 0, 1}, 2));
  EXPECT_NEAR(r.pairwise_agreement, 1.0 / 3.0, 1e-15);
}

TEST(Compare, Symmetric) {
  const auto [f, c] = eighteen_items();
  const auto ab = compare(f, c);
  const auto ba = compare(c, f);
  EXPECT_EQ(ab.pairwise_agreement, ba.pairwise_agreement);
  EXPECT_EQ(ab.discordant_items, ba.discordant_items);

  // tie case: two equally good matchings
  const std::vector<std::string> four{"a", "b", "c", "d"};
  const Partition x(four, {0, 0, 1, 1}, 2), y(four, {0, 1, 0, 1}, 2);
  EXPECT_EQ(compare(x, y).discordant_items, compare(y, x).discordant_items);
}

TEST(Compare, LabelInvariant) {
  const auto [f, c] = eighteen_items();
  const auto base = compare(f, c);
  std::vector<std::size_t> perm{0, 1, 2};
  do {
    const auto r1 = compare(relabel(f, perm), c);
    const auto r2 = compare(f, relabel(c, perm));
    EXPECT_EQ(r1.discordant_items, base.discordant_items);
    EXPECT_EQ(r2.discordant_items, base.discordant_items);
    EXPECT_EQ(r1.pairwise_agreement, base.pairwise_agreement);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const std::vector<std::string> four{"a", "b", "c", "d"};
  const Partition x(four, {0, 0, 1, 1}, 2), y(four, {0, 1, 0, 1}, 2);
  EXPECT_EQ(compare(x, y).discordant_items, compare(x, relabel(y, {1, 0})).discordant_items);
}

TEST(Compare, DroppingDiscordantItemsGivesExactMatch) {
  const std::vector<std::string> items = ids(9);
  const Partition f(items, {0, 0, 0, 1, 1, 1, 2, 2, 2}, 3);
  const Partition c(items, {0, 1, 0, 1, 1, 2, 2, 0, 2}, 3);
  const auto r = compare(f, c);
  ASSERT_FALSE(r.discordant_items.empty());
  std::vector<std::string> keep;
  std::vector<std::size_t> fg, cg;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (std::find(r.discordant_items.begin(), r.discordant_items.end(), items[i]) ==
        r.discordant_items.end()) {
      keep.push_back(items[i]);
      fg.push_back(f.groups[i]);
      cg.push_back(c.groups[i]);
    }
  EXPECT_TRUE(compare(Partition(keep, fg, 3), Partition(keep, cg, 3)).exact_match);
}

TEST(Compare, ItemOrderDoesNotMatter) {
  const Partition f({"a", "b", "c", "d"}, {0, 0, 1, 1}, 2);
  const Partition c({"d", "c", "b", "a"}, {1, 1, 0, 0}, 2);
  EXPECT_TRUE(compare(f, c).exact_match);
}

TEST(Compare, DifferentItemSetsListSymmetricDifference) {
  const Partition f({"a", "b", "c"}, {0, 0, 1}, 2);
  const Partition c({"a", "b", "z"}, {0, 0, 1}, 2);
  try {
    compare(f, c);
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("c, z"), std::string::npos);
  }
}

}  // namespace
}  // namespace likertib
