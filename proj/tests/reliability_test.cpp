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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "likertib/reliability.hpp"
#include "likertib/synth.hpp"

namespace likertib {
namespace {

Matrix exchangeable(std::size_t p, double rho) {
  Matrix m(p, p, rho);
  for (std::size_t i = 0; i < p; ++i) m(i, i) = 1.0;
  return m;
}

TEST(CronbachAlpha, IdenticalItemsGiveOne) {
  auto r = ResponseMatrix::from_items({"a", "b"}, {{1, 3, 4, 5, 2}, {1, 3, 4, 5, 2}});
  EXPECT_NEAR(cronbach_alpha(r), 1.0, 1e-12);
}

TEST(CronbachAlpha, UncorrelatedItemsGiveZero) {
  // deviations (-1,-1,1,1) and (-1,1,-1,1) are orthogonal
  auto r = ResponseMatrix::from_items({"a", "b"}, {{1, 1, 3, 3}, {1, 3, 1, 3}});
  EXPECT_NEAR(cronbach_alpha(r), 0.0, 1e-12);
}

TEST(CronbachAlpha, ExchangeableCovarianceHalf) {
  // total variance 3 + 6 * 0.5 = 6 -> 3/2 * (1 - 3/6)
  EXPECT_NEAR(cronbach_alpha(exchangeable(3, 0.5)), 0.75, 1e-12);
}

TEST(CronbachAlpha, Errors) {
  auto r = ResponseMatrix::from_items({"a", "b"}, {{1, 2, 3}, {3, 2, 1}});
  const std::vector<std::size_t> one{0};
  EXPECT_THROW(cronbach_alpha(r, one), InvalidInput);
  // a + b is constant: zero total variance
  EXPECT_THROW(cronbach_alpha(r), DegenerateInput);
}

TEST(CronbachAlpha, InvariantUnderShiftingAnItem) {
  auto model = block_model(6, 1, 0.6, 4);
  model.likert_max = 7;
  const auto base = generate(model, 80);
  std::vector<int> shifted = base.values();
  for (std::size_t r = 0; r < base.respondents(); ++r) shifted[r * base.items() + 2] += 3;
  ResponseMatrix moved(base.item_ids(), base.respondents(), shifted, 1, 10);
  EXPECT_NEAR(cronbach_alpha(base), cronbach_alpha(moved), 1e-12);
}

TEST(Kmo, TwoVariablesIsOneHalf) {
  for (double rho : {-0.7, 0.1, 0.5, 0.9}) EXPECT_NEAR(kmo(exchangeable(2, rho)), 0.5, 1e-12);
}

TEST(Kmo, ExchangeableThreeByThree) {
  // inverse is 2I - J/2, so partials are 1/3: 1.5 / (1.5 + 2/3) = 9/13
  EXPECT_NEAR(kmo(exchangeable(3, 0.5)), 9.0 / 13.0, 1e-10);
}

TEST(Kmo, ZeroCorrelationsAreDegenerate) { EXPECT_THROW(kmo(Matrix::identity(4)), DegenerateInput); }

TEST(Kmo, SingularNamesDependentPair) {
  Matrix m = exchangeable(3, 0.3);
  m(0, 2) = m(2, 0) = 1.0;
  m(1, 2) = m(2, 1) = 0.3;
  try {
    kmo(m);
    FAIL() << "expected SingularMatrix";
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.indices(), (std::vector<std::size_t>{0, 2}));
  }
}

TEST(Kmo, PermutationInvariant) {
  const auto data = generate(block_model(8, 2, 0.6, 9), 150);
  const Matrix corr = correlation_matrix(data);
  std::vector<std::size_t> perm{3, 7, 0, 5, 1, 6, 2, 4};
  EXPECT_NEAR(kmo(corr), kmo(corr.principal(perm)), 1e-12);
}

TEST(Kmo, PerItemValuesInUnitInterval) {
  const auto k = kmo_detail(correlation_matrix(generate(block_model(9, 3, 0.7, 2), 200)));
  ASSERT_EQ(k.per_item.size(), 9u);
  for (double v : k.per_item) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Bartlett, IdentityGivesZero) {
  const auto b = bartlett_sphericity(Matrix::identity(5), 50);
  EXPECT_EQ(b.chi2, 0.0);
  EXPECT_EQ(b.df, 10);
}

TEST(Bartlett, TwentyItemsHave190DegreesOfFreedom) {
  EXPECT_EQ(bartlett_sphericity(Matrix::identity(20), 202).df, 190);
}

TEST(Bartlett, HandComputedTwoByTwo) {
  // -(101 - 1 - 9/6) ln 0.75
  const auto b = bartlett_sphericity(exchangeable(2, 0.5), 101);
  EXPECT_NEAR(b.chi2, 28.33668413650042, 1e-10);
  EXPECT_EQ(b.df, 1);
}

TEST(Bartlett, IncreasesWithSampleSize) {
  const Matrix c = exchangeable(4, 0.3);
  double last = -1.0;
  for (std::size_t n = 10; n < 400; n += 37) {
    const double chi2 = bartlett_sphericity(c, n).chi2;
    EXPECT_GT(chi2, last);
    last = chi2;
  }
}

TEST(Bartlett, Errors) {
  EXPECT_THROW(bartlett_sphericity(exchangeable(5, 0.2), 5), UnreliableStatistic);
  Matrix singular = exchangeable(3, 0.5);
  singular(0, 1) = singular(1, 0) = 1.0;
  singular(1, 2) = singular(2, 1) = 0.5;
  EXPECT_THROW(bartlett_sphericity(singular, 100), DegenerateInput);
}

TEST(AssessReliability, FlagsFollowThresholds) {
  const auto data = generate(block_model(12, 3, 0.75, 5), 202);
  const auto rep = assess_reliability(data);
  EXPECT_EQ(rep.alpha_acceptable, rep.cronbach_alpha > 0.7);
  ASSERT_TRUE(rep.kmo.has_value());
  EXPECT_EQ(rep.kmo_acceptable, *rep.kmo > 0.8);
  EXPECT_EQ(rep.bartlett_df, 66);
  ASSERT_TRUE(rep.bartlett_chi2.has_value());
  EXPECT_GT(*rep.bartlett_chi2, 0.0);

  const auto strict = assess_reliability(data, {0.999, 0.999});
  EXPECT_FALSE(strict.alpha_acceptable);
  EXPECT_FALSE(strict.kmo_acceptable);
  EXPECT_EQ(strict.warnings.size(), 2u);
}

}  // namespace
}  // namespace likertib
