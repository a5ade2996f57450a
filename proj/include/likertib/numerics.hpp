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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "likertib/error.hpp"
#include "likertib/matrix.hpp"
#include "likertib/responses.hpp"

namespace likertib {

inline double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Sample (n-1) variance.
inline double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw InvalidInput("variance needs at least 2 observations");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

/// Sample covariance matrix of the item columns (n-1 normalization).
inline Matrix covariance_matrix(const ResponseMatrix& responses) {
  const std::size_t n = responses.respondents();
  const std::size_t p = responses.items();
  if (n < 2) throw InvalidInput("covariance needs at least 2 respondents, got " + std::to_string(n));
  std::vector<double> means(p, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < p; ++i) means[i] += responses(r, i);
  for (auto& m : means) m /= static_cast<double>(n);

  Matrix cov(p, p);
  std::vector<double> dev(p);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < p; ++i) dev[i] = responses(r, i) - means[i];
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) cov(i, j) += dev[i] * dev[j];
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      cov(i, j) /= static_cast<double>(n - 1);
      cov(j, i) = cov(i, j);
    }
  return cov;
}

/// p x p Pearson correlation of the item columns.
inline Matrix correlation_matrix(const ResponseMatrix& responses) {
  Matrix cov = covariance_matrix(responses);
  const std::size_t p = cov.rows();
  std::vector<double> sd(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (!(cov(i, i) > 0.0))
      throw DegenerateInput("item '" + responses.item_id(i) + "' has zero variance");
    sd[i] = std::sqrt(cov(i, i));
  }
  Matrix corr(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    corr(i, i) = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      const double r = std::clamp(cov(i, j) / (sd[i] * sd[j]), -1.0, 1.0);
      corr(i, j) = r;
      corr(j, i) = r;
    }
  }
  return corr;
}

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // non-increasing
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
  int sweeps = 0;
};

inline void require_symmetric(const Matrix& m, double tol, const char* who) {
  if (!m.square() || m.rows() == 0)
    throw InvalidInput(std::string(who) + ": matrix must be square and non-empty");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol)
        throw InvalidInput(std::string(who) + ": matrix is not symmetric at (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
  for (double v : m.data())
    if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite entry");
}

/// Makes the largest-magnitude component of each column positive; ties go
/// to the lowest row index.
inline void canonicalize_column_signs(Matrix& vectors) {
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (vectors(arg, c) < 0.0)
      for (std::size_t r = 0; r < vectors.rows(); ++r) vectors(r, c) = -vectors(r, c);
  }
}

/// Symmetric eigendecomposition by cyclic Jacobi sweeps. Stops once every
/// off-diagonal magnitude is below 1e-12 (relative to the largest entry when
/// that exceeds 1) or after 100 sweeps.
inline EigenDecomposition eig_sym(const Matrix& input) {
  require_symmetric(input, 1e-12, "eig_sym");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);

  double scale = 1.0;
  for (double x : a.data()) scale = std::max(scale, std::abs(x));
  const double threshold = 1e-12 * scale;
  constexpr int kMaxSweeps = 100;

  auto max_off = [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(a(i, j)));
    return worst;
  };

  int sweep = 0;
  while (sweep < kMaxSweeps && max_off() >= threshold) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  canonicalize_column_signs(out.eigenvectors);
  return out;
}

struct InverseResult {
  Matrix inverse;
  double determinant = 0.0;
};

/// Gauss-Jordan inversion with partial pivoting. A pivot below 1e-12 times
/// the largest input magnitude is treated as singular; the exception
/// carries the column at which elimination broke down.
inline InverseResult inverse_and_det(const Matrix& m) {
  if (!m.square() || m.rows() == 0) throw InvalidInput("inverse_and_det: matrix must be square");
  const std::size_t n = m.rows();
  double scale = 0.0;
  for (double x : m.data()) {
    if (!std::isfinite(x)) throw InvalidInput("inverse_and_det: non-finite entry");
    scale = std::max(scale, std::abs(x));
  }
  if (scale == 0.0) throw SingularMatrix("matrix is all zeros", {0});

  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-12 * scale)
      throw SingularMatrix("matrix is singular (column " + std::to_string(col) +
                               " is linearly dependent on earlier columns)",
                           {col});
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
      det = -det;
    }
    const double d = a(col, col);
    det *= d;
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return {std::move(inv), det};
}

}  // namespace likertib
