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
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "likertib/error.hpp"
#include "likertib/matrix.hpp"
#include "likertib/numerics.hpp"
#include "likertib/responses.hpp"

namespace likertib {

/// Cronbach's alpha from an item covariance matrix:
///   k/(k-1) * (1 - sum(var_i) / var_total)
/// where var_total is the sum of every covariance entry.
inline double cronbach_alpha(const Matrix& covariance) {
  if (!covariance.square()) throw InvalidInput("cronbach_alpha: covariance must be square");
  const std::size_t k = covariance.rows();
  if (k < 2) throw InvalidInput("cronbach_alpha needs at least 2 items, got " + std::to_string(k));
  double item_var = 0.0;
  double total_var = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    item_var += covariance(i, i);
    for (std::size_t j = 0; j < k; ++j) total_var += covariance(i, j);
  }
  if (!(total_var > 0.0)) throw DegenerateInput("cronbach_alpha: total score variance is zero");
  const double kd = static_cast<double>(k);
  return kd / (kd - 1.0) * (1.0 - item_var / total_var);
}

/// Alpha over the item columns listed in `item_subset`.
inline double cronbach_alpha(const ResponseMatrix& responses,
                             std::span<const std::size_t> item_subset) {
  if (item_subset.size() < 2)
    throw InvalidInput("cronbach_alpha needs at least 2 items, got " +
                       std::to_string(item_subset.size()));
  if (responses.respondents() < 2) throw InvalidInput("cronbach_alpha needs at least 2 respondents");
  return cronbach_alpha(covariance_matrix(responses.select(item_subset)));
}

inline double cronbach_alpha(const ResponseMatrix& responses) {
  std::vector<std::size_t> all(responses.items());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return cronbach_alpha(responses, all);
}

struct KmoResult {
  double overall = 0.0;
  std::vector<double> per_item;  // measure of sampling adequacy per item
};

/// Kaiser-Meyer-Olkin sampling adequacy with per-item MSA. Anti-image
/// partial correlations come from the inverse correlation matrix.
inline KmoResult kmo_detail(const Matrix& corr) {
  require_symmetric(corr, 1e-10, "kmo");
  const std::size_t p = corr.rows();
  if (p < 2) throw InvalidInput("kmo needs at least 2 variables");

  double r2_total = 0.0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (i != j) r2_total += corr(i, j) * corr(i, j);
  if (r2_total < 1e-24)
    throw DegenerateInput("kmo is undefined: all off-diagonal correlations are zero");

  InverseResult inv;
  try {
    inv = inverse_and_det(corr);
  } catch (const SingularMatrix& e) {
    // Name perfectly correlated pairs when there are any; otherwise the
    // column where elimination broke down.
    std::vector<std::size_t> implicated;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j)
        if (std::abs(std::abs(corr(i, j)) - 1.0) < 1e-10) {
          implicated.push_back(i);
          implicated.push_back(j);
        }
    if (implicated.empty()) implicated = e.indices();
    std::string list;
    for (auto idx : implicated) list += (list.empty() ? "" : ", ") + std::to_string(idx);
    throw SingularMatrix("kmo: correlation matrix is singular; near-dependent variables at index " + list,
                         implicated);
  }
  const Matrix& s = inv.inverse;

  KmoResult out;
  out.per_item.resize(p);
  double q2_total = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double r2 = 0.0;
    double q2 = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      const double q = -s(i, j) / std::sqrt(s(i, i) * s(j, j));
      r2 += corr(i, j) * corr(i, j);
      q2 += q * q;
    }
    q2_total += q2;
    out.per_item[i] = (r2 + q2) > 0.0 ? r2 / (r2 + q2) : 0.0;
  }
  out.overall = r2_total / (r2_total + q2_total);
  return out;
}

inline double kmo(const Matrix& corr) { return kmo_detail(corr).overall; }

struct BartlettResult {
  double chi2 = 0.0;
  long df = 0;
};

/// Bartlett's sphericity test statistic
///   chi2 = -(n - 1 - (2p + 5)/6) * ln det(R),  df = p(p-1)/2.
/// No p-value: compare chi2 against a critical value for df.
inline BartlettResult bartlett_sphericity(const Matrix& corr, std::size_t n) {
  require_symmetric(corr, 1e-10, "bartlett_sphericity");
  const std::size_t p = corr.rows();
  if (n <= p)
    throw UnreliableStatistic("bartlett_sphericity: n (" + std::to_string(n) +
                              ") must exceed the number of variables (" + std::to_string(p) + ")");
  double det = 0.0;
  try {
    det = inverse_and_det(corr).determinant;
  } catch (const SingularMatrix&) {
    det = 0.0;
  }
  if (!(det > 0.0))
    throw DegenerateInput("bartlett_sphericity: correlation determinant is not positive");
  const double pd = static_cast<double>(p);
  const double factor = static_cast<double>(n) - 1.0 - (2.0 * pd + 5.0) / 6.0;
  BartlettResult out;
  // ln det(R) <= 0 for a correlation matrix; clamp tiny positive rounding.
  out.chi2 = std::max(0.0, -factor * std::log(det));
  out.df = static_cast<long>(p * (p - 1) / 2);
  return out;
}

struct ReliabilityThresholds {
  double alpha = 0.7;
  double kmo = 0.8;
};

struct ReliabilityReport {
  double cronbach_alpha = 0.0;
  std::optional<double> kmo;  // empty when undefined for the input
  std::vector<double> kmo_per_item;
  std::optional<double> bartlett_chi2;
  long bartlett_df = 0;
  bool alpha_acceptable = false;
  bool kmo_acceptable = false;
  std::vector<std::string> warnings;
};

/// Runs all three adequacy checks. Statistics that are undefined for the
/// input are left empty and explained in `warnings` instead of throwing.
inline ReliabilityReport assess_reliability(const ResponseMatrix& responses,
                                            const ReliabilityThresholds& thresholds = {}) {
  ReliabilityReport rep;
  rep.cronbach_alpha = cronbach_alpha(responses);
  rep.alpha_acceptable = rep.cronbach_alpha > thresholds.alpha;
  const std::size_t p = responses.items();
  rep.bartlett_df = static_cast<long>(p * (p - 1) / 2);
  if (!rep.alpha_acceptable)
    rep.warnings.push_back("Cronbach's alpha " + std::to_string(rep.cronbach_alpha) +
                           " does not exceed " + std::to_string(thresholds.alpha));

  const Matrix corr = correlation_matrix(responses);
  try {
    auto k = kmo_detail(corr);
    rep.kmo = k.overall;
    rep.kmo_per_item = std::move(k.per_item);
    rep.kmo_acceptable = *rep.kmo > thresholds.kmo;
    if (!rep.kmo_acceptable)
      rep.warnings.push_back("KMO " + std::to_string(*rep.kmo) + " does not exceed " +
                             std::to_string(thresholds.kmo));
  } catch (const SingularMatrix& e) {
    std::string names;
    for (auto i : e.indices()) names += (names.empty() ? "" : ", ") + responses.item_id(i);
    rep.warnings.push_back("KMO unavailable: correlation matrix is singular (items " + names + ")");
  } catch (const DegenerateInput& e) {
    rep.warnings.push_back(std::string("KMO unavailable: ") + e.what());
  }
  try {
    rep.bartlett_chi2 = bartlett_sphericity(corr, responses.respondents()).chi2;
  } catch (const Error& e) {
    rep.warnings.push_back(std::string("Bartlett test unavailable: ") + e.what());
  }
  return rep;
}

}  // namespace likertib
