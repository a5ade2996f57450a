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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "likertib/error.hpp"
#include "likertib/matrix.hpp"
#include "likertib/responses.hpp"

namespace likertib {

/// Orthogonal latent-factor model for simulated Likert data. Each item
/// loads on one factor:
///   score = loading * F + sqrt(1 - loading^2) * U + noise_sd * E
/// with F, U, E independent standard normals, so loading^2 is the
/// population correlation of two items on the same factor when noise_sd = 0.
struct PlantedModel {
  std::size_t item_count = 0;
  std::size_t factor_count = 0;
  std::vector<std::size_t> assignment;  // item -> factor
  double primary_loading = 0.7;
  std::vector<double> item_loadings;    // optional per-item override
  double noise_sd = 0.0;                // extra measurement noise
  int likert_min = 1;
  int likert_max = 5;
  std::uint64_t seed = 1;
  std::vector<std::string> item_ids;    // defaults to item1..itemP

  double loading(std::size_t item) const {
    return item_loadings.empty() ? primary_loading : item_loadings.at(item);
  }

  std::vector<std::string> ids() const {
    if (!item_ids.empty()) return item_ids;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < item_count; ++i) out.push_back("item" + std::to_string(i + 1));
    return out;
  }

  void validate() const {
    if (item_count == 0 || factor_count == 0) throw InvalidInput("planted model needs items and factors");
    if (assignment.size() != item_count) throw InvalidInput("planted model assignment must cover every item");
    for (auto f : assignment)
      if (f >= factor_count) throw InvalidInput("planted model assigns an item to a missing factor");
    if (!item_loadings.empty() && item_loadings.size() != item_count)
      throw InvalidInput("planted model per-item loadings must cover every item");
    for (std::size_t i = 0; i < item_count; ++i)
      if (!(loading(i) > 0.0 && loading(i) < 1.0))
        throw InvalidInput("planted model loadings must lie in (0, 1)");
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw InvalidInput("planted model noise_sd must be >= 0");
    if (likert_max <= likert_min) throw InvalidInput("planted model needs likert_max > likert_min");
    if (!item_ids.empty() && item_ids.size() != item_count)
      throw InvalidInput("planted model item ids must cover every item");
  }
};

/// Items split into contiguous, near-equal blocks, one per factor.
inline PlantedModel block_model(std::size_t items, std::size_t factors, double loading, std::uint64_t seed) {
  PlantedModel m;
  m.item_count = items;
  m.factor_count = factors;
  m.primary_loading = loading;
  m.seed = seed;
  if (factors == 0) throw InvalidInput("block_model needs at least one factor");
  for (std::size_t i = 0; i < items; ++i) m.assignment.push_back(i * factors / items);
  m.validate();
  return m;
}

/// 20 items shaped like a real refinement run: 17 items in three clean
/// factors (item numbering follows a typical motivation questionnaire), item
/// 2 loading weakly on the third factor, and items 7 and 8 forming a
/// two-item factor of their own.
inline PlantedModel trajectory_model(std::uint64_t seed, double clean_loading = 0.8,
                                     double weak_loading = 0.35, double pair_loading = 0.7) {
  PlantedModel m;
  m.item_count = 20;
  m.factor_count = 4;
  m.seed = seed;
  m.primary_loading = clean_loading;
  m.assignment.assign(20, 0);
  m.item_loadings.assign(20, clean_loading);
  for (int item : {11, 12, 16, 19}) m.assignment[item - 1] = 1;
  for (int item : {2, 9, 14, 18}) m.assignment[item - 1] = 2;
  for (int item : {7, 8}) {
    m.assignment[item - 1] = 3;
    m.item_loadings[item - 1] = pair_loading;
  }
  m.item_loadings[2 - 1] = weak_loading;
  m.validate();
  return m;
}

/// Continuous standardized item scores (n x p) before discretization.
inline Matrix generate_scores(const PlantedModel& model, std::size_t n) {
  model.validate();
  if (n < 2) throw InvalidInput("generate needs at least 2 respondents");
  std::mt19937_64 rng(model.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(1.0 + model.noise_sd * model.noise_sd);
  Matrix scores(n, model.item_count);
  std::vector<double> factor(model.factor_count);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto& f : factor) f = normal(rng);
    for (std::size_t i = 0; i < model.item_count; ++i) {
      const double l = model.loading(i);
      const double unique = normal(rng);
      const double noise = normal(rng);
      scores(r, i) =
          (l * factor[model.assignment[i]] + std::sqrt(1.0 - l * l) * unique + model.noise_sd * noise) * scale;
    }
  }
  return scores;
}

/// Thresholds splitting a standard normal into equally likely categories.
inline std::vector<double> likert_thresholds(int likert_min, int likert_max) {
  const int categories = likert_max - likert_min + 1;
  const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
  std::vector<double> cuts;
  for (int k = 1; k < categories; ++k)
    cuts.push_back(boost::math::quantile(std_normal, static_cast<double>(k) / categories));
  return cuts;
}

/// Simulated responses: scores discretized at equal-probability thresholds.
inline ResponseMatrix generate(const PlantedModel& model, std::size_t n) {
  const Matrix scores = generate_scores(model, n);
  const std::vector<double> cuts = likert_thresholds(model.likert_min, model.likert_max);
  std::vector<int> values(n * model.item_count);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < model.item_count; ++i) {
      int level = model.likert_min;
      for (double c : cuts)
        if (scores(r, i) > c) ++level;
      values[r * model.item_count + i] = level;
    }
  return ResponseMatrix(model.ids(), n, std::move(values), model.likert_min, model.likert_max);
}

}  // namespace likertib
