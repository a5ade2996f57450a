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
#include <limits>
#include <optional>
#include <utility>
#include <span>
#include <string>
#include <vector>

#include "likertib/error.hpp"
#include "likertib/matrix.hpp"
#include "likertib/numerics.hpp"
#include "likertib/responses.hpp"

namespace likertib {

enum class RetentionRule { kaiser, scree, both };
enum class RotationMethod { none, varimax, quartimax };

inline const char* to_string(RetentionRule r) {
  switch (r) {
    case RetentionRule::kaiser: return "kaiser";
    case RetentionRule::scree: return "scree";
    case RetentionRule::both: return "both";
  }
  return "?";
}

inline const char* to_string(RotationMethod m) {
  switch (m) {
    case RotationMethod::none: return "none";
    case RotationMethod::varimax: return "varimax";
    case RotationMethod::quartimax: return "quartimax";
  }
  return "?";
}

/// Loadings and the statistics derived from them for one EFA run.
///
/// `eigenvalues` always holds all p correlation-matrix eigenvalues.
/// `loadings` has one column per retained factor, except straight out of
/// extract() where every component is present and `retained` is 0.
struct FactorSolution {
  std::vector<std::string> item_ids;
  Matrix loadings;
  std::vector<double> eigenvalues;
  std::size_t retained = 0;
  std::vector<double> communalities;
  std::vector<double> variance_pct;    // 100 * eigenvalue / p, unrotated
  std::vector<double> cumulative_pct;
  RotationMethod rotation = RotationMethod::none;
  Matrix rotation_matrix;              // rotated = unrotated * rotation_matrix
  double criterion_before = 0.0;       // orthomax objective as optimized
  double criterion_after = 0.0;
  int rotation_sweeps = 0;

  std::size_t items() const { return item_ids.size(); }
};

inline std::vector<double> communalities_of(const Matrix& loadings) {
  std::vector<double> h(loadings.rows(), 0.0);
  for (std::size_t i = 0; i < loadings.rows(); ++i)
    for (std::size_t f = 0; f < loadings.cols(); ++f) h[i] += loadings(i, f) * loadings(i, f);
  return h;
}

/// Sum of squared loadings per column.
inline std::vector<double> column_ss(const Matrix& loadings) {
  std::vector<double> ss(loadings.cols(), 0.0);
  for (std::size_t i = 0; i < loadings.rows(); ++i)
    for (std::size_t f = 0; f < loadings.cols(); ++f) ss[f] += loadings(i, f) * loadings(i, f);
  return ss;
}

/// Principal-component extraction: loading(i,f) = eigvec(i,f) * sqrt(lambda_f)
/// for positive eigenvalues, zero otherwise.
inline FactorSolution extract(const Matrix& corr, std::vector<std::string> item_ids = {}) {
  const EigenDecomposition eig = eig_sym(corr);
  const std::size_t p = corr.rows();
  if (item_ids.empty())
    for (std::size_t i = 0; i < p; ++i) item_ids.push_back(std::to_string(i + 1));
  if (item_ids.size() != p) throw InvalidInput("extract: item id count does not match matrix order");

  FactorSolution sol;
  sol.item_ids = std::move(item_ids);
  sol.eigenvalues = eig.eigenvalues;
  sol.loadings = Matrix(p, p);
  for (std::size_t f = 0; f < p; ++f) {
    const double scale = eig.eigenvalues[f] > 0.0 ? std::sqrt(eig.eigenvalues[f]) : 0.0;
    for (std::size_t i = 0; i < p; ++i) sol.loadings(i, f) = eig.eigenvectors(i, f) * scale;
  }
  sol.retained = 0;
  sol.communalities.assign(p, 0.0);
  return sol;
}

/// Restricts an extracted solution to its first `count` factors and fills in
/// communalities and explained-variance percentages.
inline FactorSolution keep_factors(const FactorSolution& extracted, std::size_t count) {
  if (count > extracted.loadings.cols())
    throw InvalidInput("keep_factors: cannot retain " + std::to_string(count) + " of " +
                       std::to_string(extracted.loadings.cols()) + " factors");
  FactorSolution sol = extracted;
  sol.loadings = extracted.loadings.leading_columns(count);
  sol.retained = count;
  sol.communalities = communalities_of(sol.loadings);
  const double p = static_cast<double>(extracted.items());
  sol.variance_pct.clear();
  sol.cumulative_pct.clear();
  double running = 0.0;
  for (std::size_t f = 0; f < count; ++f) {
    const double pct = 100.0 * extracted.eigenvalues[f] / p;
    running += pct;
    sol.variance_pct.push_back(pct);
    sol.cumulative_pct.push_back(running);
  }
  sol.rotation = RotationMethod::none;
  sol.rotation_matrix = Matrix::identity(count);
  return sol;
}

/// Eigenvalues within this distance of 1 do not count as exceeding it, so an
/// exact identity correlation retains nothing despite rounding.
inline constexpr double kKaiserSlack = 1e-10;

/// Number of factors to keep. Kaiser counts eigenvalues above 1; scree
/// takes the eigenvalue with the largest second difference (ties to the
/// earlier one) and keeps everything up to and including it; `both` takes
/// the smaller of the two.
inline std::size_t retain(std::span<const double> eigenvalues, RetentionRule rule) {
  if (eigenvalues.empty()) throw InvalidInput("retain: no eigenvalues");
  for (std::size_t i = 1; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > eigenvalues[i - 1] + 1e-12)
      throw InvalidInput("retain: eigenvalues must be sorted descending");

  auto kaiser = [&] {
    return static_cast<std::size_t>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                  [](double l) { return l > 1.0 + kKaiserSlack; }));
  };
  auto scree = [&]() -> std::size_t {
    if (eigenvalues.size() < 3) return 1;
    std::size_t elbow = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < eigenvalues.size(); ++i) {
      const double d2 = eigenvalues[i - 1] - 2.0 * eigenvalues[i] + eigenvalues[i + 1];
      if (d2 > best + 1e-12) {
        best = d2;
        elbow = i;
      }
    }
    return elbow + 1;
  };

  switch (rule) {
    case RetentionRule::kaiser: return kaiser();
    case RetentionRule::scree: return scree();
    case RetentionRule::both: return std::min(kaiser(), scree());
  }
  return 0;
}

inline double orthomax_gamma(RotationMethod m) {
  switch (m) {
    case RotationMethod::varimax: return 1.0;
    case RotationMethod::quartimax: return 0.0;
    case RotationMethod::none: break;
  }
  throw InvalidInput("orthomax_gamma: no criterion for 'none'");
}

/// Orthomax objective sum_f [ sum_i l^4 - (gamma/p) (sum_i l^2)^2 ].
/// gamma = 1 is varimax (p times the per-factor variance of squared
/// loadings), gamma = 0 is quartimax.
inline double orthomax_criterion(const Matrix& loadings, double gamma) {
  const double p = static_cast<double>(loadings.rows());
  double total = 0.0;
  for (std::size_t f = 0; f < loadings.cols(); ++f) {
    double s2 = 0.0;
    double s4 = 0.0;
    for (std::size_t i = 0; i < loadings.rows(); ++i) {
      const double sq = loadings(i, f) * loadings(i, f);
      s2 += sq;
      s4 += sq * sq;
    }
    total += s4 - gamma / p * s2 * s2;
  }
  return total;
}

struct RotationOptions {
  bool kaiser_normalize = true;
  int max_sweeps = 50;
  double tolerance = 1e-10;  // minimum criterion gain per sweep
};

namespace detail {

// Rotates columns (a, b) of every matrix in place by angle phi.
inline void planar_rotate(Matrix& m, std::size_t a, std::size_t b, double c, double s) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double x = m(r, a);
    const double y = m(r, b);
    m(r, a) = c * x + s * y;
    m(r, b) = -s * x + c * y;
  }
}

// Optimal planar angle for the orthomax criterion restricted to columns
// (a, b); the pair objective is a + b cos(4 phi) + c sin(4 phi).
inline double orthomax_pair_angle(const Matrix& l, std::size_t a, std::size_t b, double gamma) {
  const double p = static_cast<double>(l.rows());
  double sum_u = 0.0, sum_v = 0.0, sum_uv2 = 0.0, sum_uv = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) {
    const double x = l(i, a);
    const double y = l(i, b);
    const double u = x * x - y * y;
    const double v = 2.0 * x * y;
    sum_u += u;
    sum_v += v;
    sum_uv2 += u * u - v * v;
    sum_uv += u * v;
  }
  const double num = 2.0 * sum_uv - 2.0 * gamma * sum_u * sum_v / p;
  const double den = sum_uv2 - gamma * (sum_u * sum_u - sum_v * sum_v) / p;
  return 0.25 * std::atan2(num, den);
}

}  // namespace detail

/// Orthogonal orthomax rotation by pairwise planar rotations. Each pair step
/// moves to the exact maximizer for that plane, so the objective never
/// decreases. Columns of the result are sign-flipped to a positive sum and
/// ordered by decreasing sum of squares.
inline FactorSolution rotate(const FactorSolution& solution, RotationMethod method,
                             const RotationOptions& opts = {}) {
  const std::size_t k = solution.loadings.cols();
  if (k == 0 || solution.retained == 0) throw InvalidInput("rotate: no retained factors");
  if (method == RotationMethod::none) return solution;

  FactorSolution out = solution;
  out.rotation = method;
  const double gamma = orthomax_gamma(method);
  const std::size_t p = solution.loadings.rows();

  std::vector<double> h(p, 1.0);
  Matrix work = solution.loadings;
  if (opts.kaiser_normalize) {
    for (std::size_t i = 0; i < p; ++i) {
      const double comm = solution.communalities.empty() ? 0.0 : solution.communalities[i];
      h[i] = comm > 0.0 ? std::sqrt(comm) : 1.0;
      for (std::size_t f = 0; f < k; ++f) work(i, f) /= h[i];
    }
  }
  Matrix rot = Matrix::identity(k);
  out.criterion_before = orthomax_criterion(work, gamma);
  out.criterion_after = out.criterion_before;
  out.rotation_sweeps = 0;

  if (k == 1) {
    out.rotation_matrix = rot;
    return out;
  }

  double current = out.criterion_before;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    for (std::size_t a = 0; a + 1 < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        const double phi = detail::orthomax_pair_angle(work, a, b, gamma);
        if (phi == 0.0) continue;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        detail::planar_rotate(work, a, b, c, s);
        detail::planar_rotate(rot, a, b, c, s);
      }
    ++out.rotation_sweeps;
    const double next = orthomax_criterion(work, gamma);
    const double gain = next - current;
    current = next;
    if (gain < opts.tolerance) break;
  }
  out.criterion_after = current;

  // Canonical column order and orientation; both are orthogonal operations.
  Matrix rotated = solution.loadings * rot;
  std::vector<double> ss = column_ss(rotated);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ss[x] > ss[y]; });
  Matrix final_rot(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t src = order[j];
    double colsum = 0.0;
    for (std::size_t i = 0; i < p; ++i) colsum += rotated(i, src);
    const double sign = colsum < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < k; ++r) final_rot(r, j) = sign * rot(r, src);
  }
  out.rotation_matrix = final_rot;
  out.loadings = solution.loadings * final_rot;
  out.communalities = communalities_of(out.loadings);
  return out;
}

/// Factor index of each item's largest absolute loading (ties to the lower
/// factor index).
inline std::vector<std::size_t> assign_items(const Matrix& loadings) {
  std::vector<std::size_t> out(loadings.rows(), 0);
  for (std::size_t i = 0; i < loadings.rows(); ++i) {
    double best = -1.0;
    for (std::size_t f = 0; f < loadings.cols(); ++f) {
      const double a = std::abs(loadings(i, f));
      if (a > best) {
        best = a;
        out[i] = f;
      }
    }
  }
  return out;
}

inline double max_abs_loading(const Matrix& loadings, std::size_t item) {
  double best = 0.0;
  for (std::size_t f = 0; f < loadings.cols(); ++f) best = std::max(best, std::abs(loadings(item, f)));
  return best;
}

struct DiagnosticThresholds {
  double communality_cutoff = 0.5;
  double loading_floor = 0.4;
  std::size_t min_items_per_factor = 3;
  double cross_loading = 0.4;
};

/// Item indices (into the solution's item list) flagged by each rule. An
/// item can be in several sets.
struct ItemDiagnostics {
  std::vector<std::size_t> low_communality;
  std::vector<std::size_t> cross_loading;
  std::vector<std::size_t> underpopulated_factor_members;
  std::vector<std::size_t> weak_loading;
  std::vector<std::size_t> assignment;    // factor per item
  std::vector<std::size_t> factor_sizes;  // items per factor

  bool clean() const {
    return low_communality.empty() && cross_loading.empty() &&
           underpopulated_factor_members.empty() && weak_loading.empty();
  }
};

inline ItemDiagnostics diagnose(const FactorSolution& solution,
                                const DiagnosticThresholds& t = {}) {
  ItemDiagnostics d;
  const Matrix& l = solution.loadings;
  d.assignment = assign_items(l);
  d.factor_sizes.assign(l.cols(), 0);
  for (auto f : d.assignment) ++d.factor_sizes[f];

  for (std::size_t i = 0; i < l.rows(); ++i) {
    const double comm = solution.communalities.at(i);
    if (comm < t.communality_cutoff) d.low_communality.push_back(i);
    std::size_t strong = 0;
    for (std::size_t f = 0; f < l.cols(); ++f)
      if (std::abs(l(i, f)) >= t.cross_loading) ++strong;
    if (strong >= 2) d.cross_loading.push_back(i);
    if (d.factor_sizes[d.assignment[i]] < t.min_items_per_factor)
      d.underpopulated_factor_members.push_back(i);
    if (max_abs_loading(l, i) < t.loading_floor) d.weak_loading.push_back(i);
  }
  return d;
}

enum class RemovalRule { low_communality, underpopulated_factor, cross_loading, weak_loading };

inline const char* to_string(RemovalRule r) {
  switch (r) {
    case RemovalRule::low_communality: return "low_communality";
    case RemovalRule::underpopulated_factor: return "underpopulated_factor";
    case RemovalRule::cross_loading: return "cross_loading";
    case RemovalRule::weak_loading: return "weak_loading";
  }
  return "?";
}

struct Removal {
  std::string item_id;
  RemovalRule rule = RemovalRule::low_communality;
  double communality = 0.0;
  double max_loading = 0.0;
  std::size_t factor = 0;        // factor the item was assigned to
  std::size_t items_before = 0;
  std::size_t retained = 0;
};

enum class RefineOutcome { clean, degenerate_retention, item_floor };

inline const char* to_string(RefineOutcome o) {
  switch (o) {
    case RefineOutcome::clean: return "clean";
    case RefineOutcome::degenerate_retention: return "degenerate_retention";
    case RefineOutcome::item_floor: return "item_floor";
  }
  return "?";
}

struct RefineConfig {
  RetentionRule retention = RetentionRule::kaiser;
  RotationMethod rotation = RotationMethod::varimax;
  RotationOptions rotation_options;
  DiagnosticThresholds thresholds;
  std::size_t item_floor = 6;
};

/// Result of one extract -> retain -> rotate -> diagnose pass.
struct EfaPass {
  FactorSolution unrotated;  // retained columns only
  FactorSolution rotated;
  ItemDiagnostics diagnostics;
  std::size_t retained = 0;
};

/// One EFA pass. With zero retained factors, `rotated` equals `unrotated`
/// and the diagnostics are empty.
inline EfaPass efa_pass(const ResponseMatrix& responses, RetentionRule retention,
                        RotationMethod rotation, const RotationOptions& rot_opts,
                        const DiagnosticThresholds& thresholds) {
  EfaPass pass;
  const Matrix corr = correlation_matrix(responses);
  const FactorSolution extracted = extract(corr, responses.item_ids());
  pass.retained = retain(extracted.eigenvalues, retention);
  pass.unrotated = keep_factors(extracted, pass.retained);
  if (pass.retained == 0) {
    pass.rotated = pass.unrotated;
    return pass;
  }
  pass.rotated = rotate(pass.unrotated, rotation, rot_opts);
  pass.diagnostics = diagnose(pass.rotated, thresholds);
  return pass;
}

struct RefineResult {
  EfaPass final_pass;
  std::vector<Removal> log;
  RefineOutcome outcome = RefineOutcome::clean;
  std::size_t passes = 0;
  std::vector<std::string> surviving_items;

  const FactorSolution& solution() const { return final_pass.rotated; }
};

namespace detail {

// Picks the single item to drop, in priority order: lowest communality under
// the cutoff; the weakest member of the smallest underpopulated factor; the
// weakest cross-loader; the weakest sub-floor item.
inline std::pair<std::size_t, RemovalRule> choose_removal(const FactorSolution& sol,
                                                          const ItemDiagnostics& d) {
  const Matrix& l = sol.loadings;
  auto weakest = [&](const std::vector<std::size_t>& items) {
    std::size_t best = items.front();
    for (auto i : items)
      if (max_abs_loading(l, i) < max_abs_loading(l, best)) best = i;
    return best;
  };

  if (!d.low_communality.empty()) {
    std::size_t best = d.low_communality.front();
    for (auto i : d.low_communality)
      if (sol.communalities[i] < sol.communalities[best]) best = i;
    return {best, RemovalRule::low_communality};
  }
  if (!d.underpopulated_factor_members.empty()) {
    std::size_t smallest = d.assignment[d.underpopulated_factor_members.front()];
    for (auto i : d.underpopulated_factor_members) {
      const std::size_t f = d.assignment[i];
      if (d.factor_sizes[f] < d.factor_sizes[smallest] ||
          (d.factor_sizes[f] == d.factor_sizes[smallest] && f < smallest))
        smallest = f;
    }
    std::vector<std::size_t> members;
    for (auto i : d.underpopulated_factor_members)
      if (d.assignment[i] == smallest) members.push_back(i);
    return {weakest(members), RemovalRule::underpopulated_factor};
  }
  if (!d.cross_loading.empty()) return {weakest(d.cross_loading), RemovalRule::cross_loading};
  return {weakest(d.weak_loading), RemovalRule::weak_loading};
}

}  // namespace detail

/// Iterative item refinement: run an EFA pass, drop one flagged item, repeat
/// until the diagnostics are clean, retention collapses to zero factors, or
/// dropping another item would go below `item_floor`.
inline RefineResult refine(const ResponseMatrix& responses, const RefineConfig& config = {}) {
  if (responses.items() < 4)
    throw InvalidInput("refine needs at least 4 items, got " + std::to_string(responses.items()));
  RefineResult result;
  ResponseMatrix current = responses;
  while (true) {
    ++result.passes;
    result.final_pass = efa_pass(current, config.retention, config.rotation,
                                 config.rotation_options, config.thresholds);
    if (result.final_pass.retained == 0) {
      result.outcome = RefineOutcome::degenerate_retention;
      break;
    }
    const ItemDiagnostics& d = result.final_pass.diagnostics;
    if (d.clean()) {
      result.outcome = RefineOutcome::clean;
      break;
    }
    if (current.items() <= config.item_floor) {
      result.outcome = RefineOutcome::item_floor;
      break;
    }
    const FactorSolution& sol = result.final_pass.rotated;
    const auto [item, rule] = detail::choose_removal(sol, d);
    Removal r;
    r.item_id = sol.item_ids[item];
    r.rule = rule;
    r.communality = sol.communalities[item];
    r.max_loading = max_abs_loading(sol.loadings, item);
    r.factor = d.assignment[item];
    r.items_before = current.items();
    r.retained = result.final_pass.retained;
    result.log.push_back(r);
    current = current.without(r.item_id);
  }
  result.surviving_items = current.item_ids();
  return result;
}

}  // namespace likertib
