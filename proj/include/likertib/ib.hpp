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
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "likertib/error.hpp"
#include "likertib/information.hpp"
#include "likertib/matrix.hpp"
#include "likertib/partition.hpp"
#include "likertib/responses.hpp"

namespace likertib {

/// p(x, y) over items (rows, X) and respondents (columns, Y).
struct JointDistribution {
  std::vector<std::string> x_labels;
  std::vector<std::string> y_labels;
  Matrix probabilities;

  std::size_t x_count() const { return probabilities.rows(); }
  std::size_t y_count() const { return probabilities.cols(); }

  /// Throws unless entries are non-negative, sum to 1 within 1e-12 and no
  /// row or column is all zero.
  void validate() const {
    const Matrix& p = probabilities;
    if (p.empty()) throw InvalidInput("joint distribution is empty");
    if (x_labels.size() != p.rows() || y_labels.size() != p.cols())
      throw InvalidInput("joint distribution labels do not match table shape");
    double total = 0.0;
    std::vector<double> rows(p.rows(), 0.0), cols(p.cols(), 0.0);
    for (std::size_t x = 0; x < p.rows(); ++x)
      for (std::size_t y = 0; y < p.cols(); ++y) {
        if (!(p(x, y) >= 0.0) || !std::isfinite(p(x, y)))
          throw InvalidInput("joint distribution has a negative or non-finite entry");
        total += p(x, y);
        rows[x] += p(x, y);
        cols[y] += p(x, y);
      }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("joint distribution does not sum to 1");
    for (std::size_t x = 0; x < rows.size(); ++x)
      if (rows[x] == 0.0) throw InvalidInput("joint distribution row '" + x_labels[x] + "' is all zero");
    for (std::size_t y = 0; y < cols.size(); ++y)
      if (cols[y] == 0.0) throw InvalidInput("joint distribution column '" + y_labels[y] + "' is all zero");
  }
};

/// Normalizes an arbitrary non-negative table into a joint distribution.
inline JointDistribution joint_from_table(const Matrix& weights, std::vector<std::string> x_labels = {},
                                          std::vector<std::string> y_labels = {}) {
  if (x_labels.empty())
    for (std::size_t x = 0; x < weights.rows(); ++x) x_labels.push_back("x" + std::to_string(x + 1));
  if (y_labels.empty())
    for (std::size_t y = 0; y < weights.cols(); ++y) y_labels.push_back("y" + std::to_string(y + 1));
  double total = 0.0;
  for (double v : weights.data()) total += v;
  if (!(total > 0.0)) throw InvalidInput("joint_from_table: table has no mass");
  std::vector<double> data(weights.data());
  for (auto& v : data) v /= total;
  JointDistribution j{std::move(x_labels), std::move(y_labels),
                      Matrix(weights.rows(), weights.cols(), std::move(data))};
  j.validate();
  return j;
}

/// X = items, Y = respondents, p(x, y) proportional to respondent y's
/// answer to item x.
inline JointDistribution build_joint(const ResponseMatrix& responses) {
  if (responses.respondents() < 2 || responses.items() < 2)
    throw InvalidInput("build_joint needs at least 2 items and 2 respondents");
  responses.check_range();
  Matrix weights(responses.items(), responses.respondents());
  for (std::size_t r = 0; r < responses.respondents(); ++r)
    for (std::size_t i = 0; i < responses.items(); ++i) weights(i, r) = responses(r, i);
  std::vector<std::string> ys;
  for (std::size_t r = 0; r < responses.respondents(); ++r) ys.push_back("r" + std::to_string(r + 1));
  return joint_from_table(weights, responses.item_ids(), std::move(ys));
}

struct IbOptions {
  std::size_t t_count = 2;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  int max_sweeps = 1000;
  double tolerance = 1e-9;  // convergence on |change in L| between sweeps
  bool parallel_restarts = true;
};

/// Converged IB state. Conditionals are stored column-per-conditioning
/// value: p_t_given_x is T x |X|, p_y_given_t is |Y| x T.
struct IbSolution {
  std::vector<std::string> x_labels;
  std::size_t t_count = 0;
  double beta = 0.0;
  Matrix p_t_given_x;
  Matrix p_y_given_t;
  std::vector<double> p_t;
  double i_xt = 0.0;
  double i_ty = 0.0;
  double l_value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::size_t restart = 0;      // which restart produced this solution
  std::vector<double> l_history;  // L after initialization and after each sweep
};

namespace detail {

struct IbWorkspace {
  const Matrix& pxy;
  std::vector<double> px;
  Matrix py_given_x;               // |X| x |Y|
  std::vector<double> neg_entropy;  // sum_y p(y|x) ln p(y|x)

  explicit IbWorkspace(const Matrix& joint) : pxy(joint), px(joint.rows(), 0.0), py_given_x(joint.rows(), joint.cols()) {
    neg_entropy.assign(joint.rows(), 0.0);
    for (std::size_t x = 0; x < joint.rows(); ++x) {
      for (std::size_t y = 0; y < joint.cols(); ++y) px[x] += joint(x, y);
      for (std::size_t y = 0; y < joint.cols(); ++y) {
        const double c = joint(x, y) / px[x];
        py_given_x(x, y) = c;
        if (c > 0.0) neg_entropy[x] += c * std::log(c);
      }
    }
  }
};

// p(t) and p(y|t) implied by p(t|x) through the Markov chain T - X - Y.
inline void ib_marginals(const IbWorkspace& ws, const Matrix& ptx, std::vector<double>& pt, Matrix& pyt) {
  const std::size_t T = ptx.rows();
  const std::size_t X = ptx.cols();
  const std::size_t Y = ws.pxy.cols();
  pt.assign(T, 0.0);
  pyt = Matrix(Y, T);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t x = 0; x < X; ++x) pt[t] += ws.px[x] * ptx(t, x);
    if (pt[t] <= 0.0) {
      // Dead cluster: any distribution will do, its weight is zero.
      for (std::size_t y = 0; y < Y; ++y) {
        double py = 0.0;
        for (std::size_t x = 0; x < X; ++x) py += ws.pxy(x, y);
        pyt(y, t) = py;
      }
      continue;
    }
    for (std::size_t x = 0; x < X; ++x) {
      const double w = ptx(t, x) / pt[t];
      if (w == 0.0) continue;
      for (std::size_t y = 0; y < Y; ++y) pyt(y, t) += w * ws.pxy(x, y);
    }
  }
}

// Joint p(x, t) = p(x) p(t|x), laid out |X| x T.
inline Matrix ib_joint_xt(const IbWorkspace& ws, const Matrix& ptx) {
  Matrix j(ptx.cols(), ptx.rows());
  for (std::size_t x = 0; x < ptx.cols(); ++x)
    for (std::size_t t = 0; t < ptx.rows(); ++t) j(x, t) = ws.px[x] * ptx(t, x);
  return j;
}

// Joint p(t, y) = p(t) p(y|t), laid out T x |Y|.
inline Matrix ib_joint_ty(const std::vector<double>& pt, const Matrix& pyt) {
  Matrix j(pt.size(), pyt.rows());
  for (std::size_t t = 0; t < pt.size(); ++t)
    for (std::size_t y = 0; y < pyt.rows(); ++y) j(t, y) = pt[t] * pyt(y, t);
  return j;
}

inline void ib_information(const IbWorkspace& ws, IbSolution& s) {
  s.i_xt = mutual_information(ib_joint_xt(ws, s.p_t_given_x));
  s.i_ty = mutual_information(ib_joint_ty(s.p_t, s.p_y_given_t));
  s.l_value = s.i_xt - s.beta * s.i_ty;
}

// Self-consistent update of p(t|x): p(t) exp(-beta KL[p(y|x) || p(y|t)]) / Z.
inline void ib_update_assignments(const IbWorkspace& ws, double beta, const std::vector<double>& pt,
                                  const Matrix& pyt, Matrix& ptx) {
  const std::size_t T = pt.size();
  const std::size_t X = ws.py_given_x.rows();
  const std::size_t Y = ws.py_given_x.cols();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  Matrix log_pyt(Y, T);
  for (std::size_t y = 0; y < Y; ++y)
    for (std::size_t t = 0; t < T; ++t) log_pyt(y, t) = pyt(y, t) > 0.0 ? std::log(pyt(y, t)) : kNegInf;

  std::vector<double> logits(T);
  for (std::size_t x = 0; x < X; ++x) {
    double top = kNegInf;
    for (std::size_t t = 0; t < T; ++t) {
      if (pt[t] <= 0.0) {
        logits[t] = kNegInf;
        continue;
      }
      double logit = std::log(pt[t]);
      if (beta != 0.0) {
        double cross = 0.0;  // sum_y p(y|x) ln p(y|t)
        bool infinite = false;
        for (std::size_t y = 0; y < Y; ++y) {
          const double c = ws.py_given_x(x, y);
          if (c == 0.0) continue;
          if (log_pyt(y, t) == kNegInf) {
            infinite = true;
            break;
          }
          cross += c * log_pyt(y, t);
        }
        const double kl = ws.neg_entropy[x] - cross;
        logit = infinite ? kNegInf : logit - beta * kl;
      }
      logits[t] = logit;
      top = std::max(top, logit);
    }
    double z = 0.0;  // partition function, scaled by exp(-top)
    for (std::size_t t = 0; t < T; ++t) z += logits[t] == kNegInf ? 0.0 : std::exp(logits[t] - top);
    for (std::size_t t = 0; t < T; ++t)
      ptx(t, x) = logits[t] == kNegInf ? 0.0 : std::exp(logits[t] - top) / z;
  }
}

inline std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

inline IbSolution ib_single_restart(const JointDistribution& joint, const IbOptions& opts,
                                    std::size_t restart) {
  const IbWorkspace ws(joint.probabilities);
  const std::size_t X = joint.x_count();
  const std::size_t T = opts.t_count;

  IbSolution s;
  s.x_labels = joint.x_labels;
  s.t_count = T;
  s.beta = opts.beta;
  s.restart = restart;
  s.p_t_given_x = Matrix(T, X);

  std::mt19937_64 rng(restart_seed(opts.seed, restart));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t x = 0; x < X; ++x) {
    double sum = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      s.p_t_given_x(t, x) = unit(rng) + 1e-12;
      sum += s.p_t_given_x(t, x);
    }
    for (std::size_t t = 0; t < T; ++t) s.p_t_given_x(t, x) /= sum;
  }
  ib_marginals(ws, s.p_t_given_x, s.p_t, s.p_y_given_t);
  ib_information(ws, s);
  s.l_history.push_back(s.l_value);

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const double previous = s.l_value;
    ib_update_assignments(ws, opts.beta, s.p_t, s.p_y_given_t, s.p_t_given_x);
    ib_marginals(ws, s.p_t_given_x, s.p_t, s.p_y_given_t);
    ib_information(ws, s);
    s.l_history.push_back(s.l_value);
    s.iterations = sweep;
    if (std::abs(previous - s.l_value) < opts.tolerance) {
      s.converged = true;
      break;
    }
  }
  return s;
}

}  // namespace detail

/// Iterative Information Bottleneck: random p(t|x), then alternate the
/// p(t), p(y|t) and p(t|x) updates until L = I(X;T) - beta I(T;Y) moves by
/// less than the tolerance. Restarts are independent and may run
/// concurrently; the lowest L wins, ties to the earliest restart.
inline IbSolution ib_solve(const JointDistribution& joint, const IbOptions& opts) {
  joint.validate();
  if (opts.t_count < 1) throw InvalidInput("ib_solve: T must be at least 1");
  if (opts.t_count > joint.x_count())
    throw InvalidInput("ib_solve: T (" + std::to_string(opts.t_count) + ") exceeds |X| (" +
                       std::to_string(joint.x_count()) + ")");
  if (!(opts.beta >= 0.0) || !std::isfinite(opts.beta)) throw InvalidInput("ib_solve: beta must be >= 0");
  if (opts.restarts < 1) throw InvalidInput("ib_solve: restarts must be at least 1");

  std::vector<IbSolution> runs(opts.restarts);
  if (opts.parallel_restarts && opts.restarts > 1) {
    std::vector<std::future<IbSolution>> pending;
    pending.reserve(opts.restarts);
    for (std::size_t r = 0; r < opts.restarts; ++r)
      pending.push_back(std::async(std::launch::async,
                                   [&joint, &opts, r] { return detail::ib_single_restart(joint, opts, r); }));
    for (std::size_t r = 0; r < opts.restarts; ++r) runs[r] = pending[r].get();
  } else {
    for (std::size_t r = 0; r < opts.restarts; ++r) runs[r] = detail::ib_single_restart(joint, opts, r);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].l_value < runs[best].l_value) best = r;
  return std::move(runs[best]);
}

/// Each item goes to argmax_t p(t|x), ties to the lowest cluster index.
/// Empty clusters are kept in `group_count`.
inline Partition hard_partition(const IbSolution& s) {
  const std::size_t X = s.p_t_given_x.cols();
  std::vector<std::size_t> groups(X, 0);
  for (std::size_t x = 0; x < X; ++x) {
    double best = -1.0;
    for (std::size_t t = 0; t < s.t_count; ++t)
      if (s.p_t_given_x(t, x) > best) {
        best = s.p_t_given_x(t, x);
        groups[x] = t;
      }
  }
  std::vector<std::string> labels = s.x_labels;
  if (labels.empty())
    for (std::size_t x = 0; x < X; ++x) labels.push_back("x" + std::to_string(x + 1));
  return Partition(std::move(labels), std::move(groups), s.t_count);
}

/// I(T;Y) of a hard assignment of the rows of `joint`.
inline double hard_relevance(const JointDistribution& joint, const std::vector<std::size_t>& groups,
                             std::size_t group_count) {
  Matrix ty(group_count, joint.y_count());
  for (std::size_t x = 0; x < joint.x_count(); ++x)
    for (std::size_t y = 0; y < joint.y_count(); ++y) ty(groups.at(x), y) += joint.probabilities(x, y);
  return mutual_information(ty);
}

struct BetaPoint {
  double beta = 0.0;
  IbSolution solution;
};

/// One ib_solve per beta (same seed and restart count for each).
inline std::vector<BetaPoint> beta_sweep(const JointDistribution& joint, std::size_t t_count,
                                         const std::vector<double>& betas, std::uint64_t seed,
                                         std::size_t restarts, bool parallel_restarts = true) {
  if (betas.empty()) throw InvalidInput("beta_sweep: no beta values");
  for (std::size_t i = 1; i < betas.size(); ++i)
    if (!(betas[i] > betas[i - 1])) throw InvalidInput("beta_sweep: betas must be strictly ascending");
  std::vector<BetaPoint> out;
  out.reserve(betas.size());
  for (double b : betas) {
    IbOptions o;
    o.t_count = t_count;
    o.beta = b;
    o.seed = seed;
    o.restarts = restarts;
    o.parallel_restarts = parallel_restarts;
    out.push_back({b, ib_solve(joint, o)});
  }
  return out;
}

/// Index of the smallest beta whose hard partition uses every cluster and
/// is unchanged at the next beta. Falls back to the last beta.
inline std::size_t select_stable_beta(const std::vector<BetaPoint>& sweep) {
  if (sweep.empty()) throw InvalidInput("select_stable_beta: empty sweep");
  for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
    const Partition a = hard_partition(sweep[i].solution);
    if (a.nonempty_groups() != a.group_count) continue;
    if (a.same_grouping(hard_partition(sweep[i + 1].solution))) return i;
  }
  return sweep.size() - 1;
}

}  // namespace likertib
