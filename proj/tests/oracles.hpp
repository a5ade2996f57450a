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

// Independent reference computations for the test suites. Nothing here may
// call the library routine it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "likertib/matrix.hpp"

namespace likertib::oracle {

/// Characteristic polynomial coefficients of a square matrix by the
/// Faddeev-LeVerrier recursion; coeffs[k] multiplies x^k, leading 1.
inline std::vector<double> characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = next;
    const Matrix am = a * m;
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

inline double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

/// Real roots (descending) by sign-change scan plus bisection. Returns fewer
/// than degree roots when two roots are closer than the scan step.
inline std::vector<double> real_roots(const std::vector<double>& c, double bound, std::size_t grid = 200000) {
  std::vector<double> roots;
  const double step = 2.0 * bound / static_cast<double>(grid);
  double x0 = -bound;
  double f0 = poly_eval(c, x0);
  for (std::size_t g = 1; g <= grid; ++g) {
    const double x1 = -bound + step * static_cast<double>(g);
    const double f1 = poly_eval(c, x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = poly_eval(c, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

/// I(A;B) as H(A) + H(B) - H(A,B), summed cell by cell.
inline double mutual_information_entropy_form(const Matrix& joint) {
  auto h = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  double h_joint = 0.0, h_a = 0.0, h_b = 0.0;
  for (std::size_t a = 0; a < joint.rows(); ++a) {
    double pa = 0.0;
    for (std::size_t b = 0; b < joint.cols(); ++b) {
      pa += joint(a, b);
      h_joint += h(joint(a, b));
    }
    h_a += h(pa);
  }
  for (std::size_t b = 0; b < joint.cols(); ++b) {
    double pb = 0.0;
    for (std::size_t a = 0; a < joint.rows(); ++a) pb += joint(a, b);
    h_b += h(pb);
  }
  return h_a + h_b - h_joint;
}

struct HardTwoPartition {
  std::vector<std::size_t> groups;
  double relevance = 0.0;  // I(T;Y)
};

/// Every split of the rows of `joint` into two non-empty groups (row 0 in
/// group 0), with the relevance I(T;Y) of each.
inline std::vector<HardTwoPartition> all_two_partitions(const Matrix& joint) {
  const std::size_t n = joint.rows();
  std::vector<HardTwoPartition> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    HardTwoPartition hp;
    hp.groups.assign(n, 0);
    for (std::size_t i = 1; i < n; ++i) hp.groups[i] = (mask >> (i - 1)) & 1U;
    Matrix ty(2, joint.cols());
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < joint.cols(); ++y) ty(hp.groups[x], y) += joint(x, y);
    hp.relevance = mutual_information_entropy_form(ty);
    out.push_back(std::move(hp));
  }
  return out;
}

// ---- random generators --------------------------------------------------

inline Matrix random_symmetric(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

/// Strictly positive table normalized to sum 1.
inline Matrix random_joint(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::exponential_distribution<double> e(1.0);
  Matrix m(rows, cols);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) total += (m(i, j) = e(rng) + 1e-3);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) /= total;
  return m;
}

/// Two well-separated prototype rows over `cols` outcomes; every row is a
/// small perturbation of one of them. `groups` receives the truth.
inline Matrix separated_joint(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                              std::vector<std::size_t>& groups) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(rows, cols);
  groups.assign(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) groups[i] = i < rows / 2 ? 0 : 1;
  std::shuffle(groups.begin() + 1, groups.end(), rng);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const bool home = (j < cols / 2) == (groups[i] == 0);
      total += (m(i, j) = (home ? 1.0 : 0.1) * (0.8 + 0.4 * u(rng)));
    }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) /= total;
  return m;
}

}  // namespace likertib::oracle
