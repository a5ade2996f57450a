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
#include <random>

#include <gtest/gtest.h>

#include "likertib/numerics.hpp"
#include "oracles.hpp"

namespace likertib {
namespace {

TEST(CorrelationMatrix, IdenticalColumnsCorrelatePerfectly) {
  auto r = ResponseMatrix::from_items({"a", "b"}, {{1, 2, 4, 5}, {1, 2, 4, 5}});
  const Matrix c = correlation_matrix(r);
  EXPECT_DOUBLE_EQ(c(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(c(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(c(0, 0), 1.0);
}

TEST(CorrelationMatrix, ReflectedColumnIsAntiCorrelated) {
  auto r = ResponseMatrix::from_items({"a", "b"}, {{1, 2, 3, 5, 4}, {5, 4, 3, 1, 2}});
  EXPECT_DOUBLE_EQ(correlation_matrix(r)(0, 1), -1.0);
}

TEST(CorrelationMatrix, HandComputedPearson) {
  // deviations (-1,0,1) and (-1,1,0): cov 1/2, variances 1 -> r = 0.5
  auto r = ResponseMatrix::from_items({"a", "b"}, {{1, 2, 3}, {1, 3, 2}});
  EXPECT_NEAR(correlation_matrix(r)(0, 1), 0.5, 1e-15);
}

TEST(CorrelationMatrix, ZeroVarianceNamesItem) {
  auto r = ResponseMatrix::from_items({"a", "flat"}, {{1, 2, 3}, {4, 4, 4}});
  try {
    correlation_matrix(r);
    FAIL() << "expected DegenerateInput";
  } catch (const DegenerateInput& e) {
    EXPECT_NE(std::string(e.what()).find("flat"), std::string::npos);
  }
}

TEST(CorrelationMatrix, NeedsTwoRespondents) {
  auto r = ResponseMatrix::from_items({"a", "b"}, {{1}, {2}});
  EXPECT_THROW(correlation_matrix(r), InvalidInput);
}

TEST(EigSym, Identity) {
  const auto e = eig_sym(Matrix::identity(3));
  for (double v : e.eigenvalues) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(EigSym, TwoByTwoClosedForm) {
  const auto e = eig_sym(Matrix{{1.0, 0.5}, {0.5, 1.0}});
  EXPECT_NEAR(e.eigenvalues[0], 1.5, 1e-14);
  EXPECT_NEAR(e.eigenvalues[1], 0.5, 1e-14);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(e.eigenvectors(0, 0)), s, 1e-14);
  EXPECT_NEAR(e.eigenvectors(0, 0) * e.eigenvectors(1, 0), 0.5, 1e-14);   // (1,1)/sqrt2
  EXPECT_NEAR(e.eigenvectors(0, 1) * e.eigenvectors(1, 1), -0.5, 1e-14);  // (1,-1)/sqrt2
}

TEST(EigSym, SignConventionLargestComponentPositive) {
  std::mt19937_64 rng(3);
  const auto e = eig_sym(oracle::random_symmetric(rng, 6));
  for (std::size_t c = 0; c < 6; ++c) {
    std::size_t arg = 0;
    for (std::size_t r = 1; r < 6; ++r)
      if (std::abs(e.eigenvectors(r, c)) > std::abs(e.eigenvectors(arg, c))) arg = r;
    EXPECT_GT(e.eigenvectors(arg, c), 0.0);
  }
}

TEST(EigSym, MatchesCharacteristicPolynomialRoots) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 10) {
    const Matrix m = oracle::random_symmetric(rng, 4);
    const auto roots = oracle::real_roots(oracle::characteristic_polynomial(m), 5.0);
    if (roots.size() != 4) continue;  // two roots inside one scan step
    const auto e = eig_sym(m);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(e.eigenvalues[k], roots[k], 1e-8);
    ++checked;
  }
}

TEST(EigSym, ReconstructionOrthogonalityAndTrace) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const Matrix m = oracle::random_symmetric(rng, n);
    const auto e = eig_sym(m);
    Matrix lambda(n, n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      lambda(k, k) = e.eigenvalues[k];
      sum += e.eigenvalues[k];
      if (k > 0) EXPECT_LE(e.eigenvalues[k], e.eigenvalues[k - 1]);
    }
    const Matrix& v = e.eigenvectors;
    EXPECT_LE(frobenius_distance(v * lambda * v.transpose(), m), 1e-8);
    EXPECT_LE(max_abs_difference(v.transpose() * v, Matrix::identity(n)), 1e-10);
    EXPECT_NEAR(sum, trace(m), 1e-10);
  }
}

TEST(EigSym, DeterminantIsProductOfEigenvalues) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = oracle::random_symmetric(rng, 5);
    for (std::size_t i = 0; i < 5; ++i) m(i, i) += 3.0;
    const auto e = eig_sym(m);
    double prod = 1.0;
    for (double v : e.eigenvalues) prod *= v;
    EXPECT_NEAR(inverse_and_det(m).determinant / prod, 1.0, 1e-8);
  }
}

TEST(EigSym, Deterministic) {
  std::mt19937_64 rng(2);
  const Matrix m = oracle::random_symmetric(rng, 9);
  const auto a = eig_sym(m);
  const auto b = eig_sym(m);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(EigSym, RejectsNonSquareAndAsymmetric) {
  EXPECT_THROW(eig_sym(Matrix(2, 3)), InvalidInput);
  EXPECT_THROW(eig_sym(Matrix{{1.0, 0.2}, {0.3, 1.0}}), InvalidInput);
}

TEST(InverseAndDet, Identity) {
  const auto r = inverse_and_det(Matrix::identity(4));
  EXPECT_EQ(r.inverse, Matrix::identity(4));
  EXPECT_DOUBLE_EQ(r.determinant, 1.0);
}

TEST(InverseAndDet, TwoByTwo) {
  EXPECT_NEAR(inverse_and_det(Matrix{{1.0, 0.5}, {0.5, 1.0}}).determinant, 0.75, 1e-15);
}

TEST(InverseAndDet, ResidualOnWellConditioned) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = oracle::random_matrix(rng, 5, 5, -1.0, 1.0);
    for (std::size_t i = 0; i < 5; ++i) m(i, i) += 4.0;
    const auto r = inverse_and_det(m);
    EXPECT_LE(max_abs_difference(m * r.inverse, Matrix::identity(5)), 1e-8);
  }
}

TEST(InverseAndDet, SingularReportsColumn) {
  const Matrix m{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}, {0.0, 1.0, 1.0}};
  try {
    inverse_and_det(m);
    FAIL() << "expected SingularMatrix";
  } catch (const SingularMatrix& e) {
    ASSERT_EQ(e.indices().size(), 1u);
  }
}

}  // namespace
}  // namespace likertib
