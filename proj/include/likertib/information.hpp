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

#include <cmath>
#include <cstddef>
#include <vector>

#include "likertib/error.hpp"
#include "likertib/matrix.hpp"

namespace likertib {

/// Mutual information (nats) of a joint probability table, with 0 ln 0 = 0.
/// Tiny negative results from rounding are clamped to zero.
inline double mutual_information(const Matrix& joint) {
  if (joint.empty()) throw InvalidInput("mutual_information: empty table");
  std::vector<double> row(joint.rows(), 0.0);
  std::vector<double> col(joint.cols(), 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < joint.rows(); ++a)
    for (std::size_t b = 0; b < joint.cols(); ++b) {
      const double v = joint(a, b);
      if (v < 0.0 || !std::isfinite(v))
        throw InvalidInput("mutual_information: entries must be finite and non-negative");
      row[a] += v;
      col[b] += v;
      total += v;
    }
  if (std::abs(total - 1.0) > 1e-8) throw InvalidInput("mutual_information: table does not sum to 1");

  double mi = 0.0;
  for (std::size_t a = 0; a < joint.rows(); ++a)
    for (std::size_t b = 0; b < joint.cols(); ++b) {
      const double v = joint(a, b);
      if (v > 0.0) mi += v * std::log(v / (row[a] * col[b]));
    }
  return mi > 0.0 ? mi : 0.0;
}

}  // namespace likertib
