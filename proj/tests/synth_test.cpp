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

#include <cmath>

#include <gtest/gtest.h>

#include "likertib/numerics.hpp"
#include "likertib/synth.hpp"

namespace likertib {
namespace {

double pearson(const Matrix& s, std::size_t a, std::size_t b) {
  const std::size_t n = s.rows();
  double ma = 0, mb = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ma += s(r, a);
    mb += s(r, b);
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t r = 0; r < n; ++r) {
    sab += (s(r, a) - ma) * (s(r, b) - mb);
    saa += (s(r, a) - ma) * (s(r, a) - ma);
    sbb += (s(r, b) - mb) * (s(r, b) - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(Synth, SameFactorCorrelationIsLoadingSquared) {
  const PlantedModel m = block_model(6, 2, 0.7, 11);
  const Matrix s = generate_scores(m, 5000);
  EXPECT_NEAR(pearson(s, 0, 1), 0.49, 0.03);
  EXPECT_NEAR(pearson(s, 3, 5), 0.49, 0.03);
}

TEST(Synth, DifferentFactorsAreUncorrelated) {
  const Matrix s = generate_scores(block_model(6, 2, 0.7, 12), 5000);
  EXPECT_NEAR(pearson(s, 0, 4), 0.0, 0.05);
  EXPECT_NEAR(pearson(s, 2, 3), 0.0, 0.05);
}

TEST(Synth, ExtraNoiseAttenuatesCorrelation) {
  PlantedModel m = block_model(4, 1, 0.8, 13);
  m.noise_sd = 1.0;
  const Matrix s = generate_scores(m, 5000);
  // standardized: 0.64 / (1 + 1)
  EXPECT_NEAR(pearson(s, 0, 1), 0.32, 0.03);
}

TEST(Synth, DeterministicPerSeed) {
  const auto a = generate(block_model(8, 2, 0.6, 5), 100);
  const auto b = generate(block_model(8, 2, 0.6, 5), 100);
  const auto c = generate(block_model(8, 2, 0.6, 6), 100);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
}

TEST(Synth, ValuesStayInRangeAndUseIt) {
  PlantedModel m = block_model(5, 1, 0.5, 7);
  m.likert_min = 0;
  m.likert_max = 6;
  const auto d = generate(m, 2000);
  std::vector<int> counts(7, 0);
  for (int v : d.values()) {
    ASSERT_GE(v, 0);
    ASSERT_LE(v, 6);
    ++counts[v];
  }
  // equal-probability thresholds: every category near 1/7
  for (int c : counts) EXPECT_NEAR(c / 10000.0, 1.0 / 7.0, 0.02);
}

TEST(Synth, ThresholdsAreNormalQuantiles) {
  const auto t = likert_thresholds(1, 5);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_NEAR(t[0], -0.8416212335729143, 1e-12);
  EXPECT_NEAR(t[1], -0.2533471031357997, 1e-12);
  EXPECT_NEAR(t[2], 0.2533471031357997, 1e-12);
  EXPECT_NEAR(t[3], 0.8416212335729143, 1e-12);
}

TEST(Synth, BlockAssignmentIsContiguous) {
  const auto m = block_model(17, 3, 0.7, 1);
  std::vector<std::size_t> sizes(3, 0);
  for (auto f : m.assignment) ++sizes[f];
  EXPECT_EQ(sizes, (std::vector<std::size_t>{6, 6, 5}));
  EXPECT_EQ(m.ids().front(), "item1");
  EXPECT_EQ(m.ids().back(), "item17");
}

TEST(Synth, TrajectoryModelLayout) {
  const auto m = trajectory_model(3);
  EXPECT_EQ(m.item_count, 20u);
  EXPECT_EQ(m.factor_count, 4u);
  EXPECT_NEAR(m.loading(1), 0.35, 1e-15);  // item2
  EXPECT_EQ(m.assignment[6], m.assignment[7]);  // item7, item8 pair
}

TEST(Synth, RejectsDegenerateModels) {
  PlantedModel m = block_model(4, 2, 0.7, 1);
  m.primary_loading = 1.0;
  EXPECT_THROW(generate(m, 10), InvalidInput);
  m = block_model(4, 2, 0.7, 1);
  m.likert_max = m.likert_min;
  EXPECT_THROW(generate(m, 10), InvalidInput);
  m = block_model(4, 2, 0.7, 1);
  m.assignment.pop_back();
  EXPECT_THROW(generate(m, 10), InvalidInput);
  EXPECT_THROW(generate(block_model(4, 2, 0.7, 1), 1), InvalidInput);
  m = block_model(4, 2, 0.7, 1);
  m.noise_sd = -0.5;
  EXPECT_THROW(generate(m, 10), InvalidInput);
}

}  // namespace
}  // namespace likertib
