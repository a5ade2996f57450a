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
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "likertib/agreement.hpp"
#include "likertib/csv.hpp"
#include "likertib/efa.hpp"
#include "likertib/error.hpp"
#include "likertib/ib.hpp"
#include "likertib/partition.hpp"
#include "likertib/reliability.hpp"
#include "likertib/responses.hpp"

namespace likertib {

inline constexpr const char* kVersion = "0.1.0";

enum class RotationChoice { varimax, quartimax, both };

inline const char* to_string(RotationChoice r) {
  switch (r) {
    case RotationChoice::varimax: return "varimax";
    case RotationChoice::quartimax: return "quartimax";
    case RotationChoice::both: return "both";
  }
  return "?";
}

struct PipelineConfig {
  int likert_min = 1;
  int likert_max = 5;
  double alpha_threshold = 0.7;
  double kmo_threshold = 0.8;
  double loading_floor = 0.4;  // also the cross-loading level
  double communality_cutoff = 0.5;
  std::size_t min_items_per_factor = 3;
  RetentionRule retention = RetentionRule::kaiser;
  RotationChoice rotation = RotationChoice::varimax;
  bool kaiser_normalize = true;
  bool chain_quartimax = false;  // quartimax starts from the varimax result
  std::size_t t_max = 0;         // 0: retained factors + 1
  std::vector<double> betas = {1, 2, 5, 10, 20, 50, 100, 200, 500};
  std::size_t restarts = 10;
  std::uint64_t seed = 1;
  std::size_t item_floor = 6;
  bool reconcile = true;

  void validate() const {
    if (likert_max <= likert_min) throw InvalidInput("config: likert-max must exceed likert-min");
    auto unit = [](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput(std::string("config: ") + name + " must lie in [0, 1]");
    };
    unit(alpha_threshold, "alpha-threshold");
    unit(kmo_threshold, "kmo-threshold");
    unit(loading_floor, "loading-floor");
    unit(communality_cutoff, "communality-cutoff");
    if (min_items_per_factor < 1) throw InvalidInput("config: min-items-per-factor must be at least 1");
    if (betas.empty()) throw InvalidInput("config: at least one beta is required");
    for (std::size_t i = 0; i < betas.size(); ++i) {
      if (!(betas[i] >= 0.0)) throw InvalidInput("config: betas must be >= 0");
      if (i > 0 && !(betas[i] > betas[i - 1])) throw InvalidInput("config: betas must be strictly ascending");
    }
    if (restarts < 1) throw InvalidInput("config: restarts must be at least 1");
    if (item_floor < 4) throw InvalidInput("config: item-floor must be at least 4");
  }

  RotationMethod primary_rotation() const {
    return rotation == RotationChoice::quartimax ? RotationMethod::quartimax : RotationMethod::varimax;
  }

  RefineConfig refine_config() const {
    RefineConfig rc;
    rc.retention = retention;
    rc.rotation = primary_rotation();
    rc.rotation_options.kaiser_normalize = kaiser_normalize;
    rc.thresholds = diagnostic_thresholds();
    rc.item_floor = item_floor;
    return rc;
  }

  DiagnosticThresholds diagnostic_thresholds() const {
    DiagnosticThresholds t;
    t.communality_cutoff = communality_cutoff;
    t.loading_floor = loading_floor;
    t.cross_loading = loading_floor;
    t.min_items_per_factor = min_items_per_factor;
    return t;
  }
};

/// Composition and reliability of one rotated factor.
struct FactorSummary {
  std::vector<std::string> items;
  std::optional<double> alpha;  // needs at least 2 items
  double eigenvalue = 0.0;
  double variance_pct = 0.0;
  double cumulative_pct = 0.0;
  double rotated_ss = 0.0;
};

struct EfaSection {
  FactorSolution solution;                      // primary rotation
  std::optional<FactorSolution> quartimax;      // second rotation when both are requested
  ItemDiagnostics diagnostics;
  std::vector<FactorSummary> factors;
};

struct IbRun {
  std::size_t t_count = 0;
  std::vector<BetaPoint> sweep;
  std::size_t selected = 0;  // index into sweep

  const IbSolution& chosen() const { return sweep.at(selected).solution; }
};

struct ReconcileStep {
  std::string removed_item;
  AgreementReport agreement_before;
  std::size_t items_before = 0;
};

struct PipelineReport {
  PipelineConfig config;
  std::string input_digest;  // sha256 of the canonical CSV rendering
  std::size_t respondents = 0;
  std::vector<std::string> initial_items;
  std::size_t dropped_rows = 0;
  std::string generated_at;

  ReliabilityReport reliability;
  std::vector<Removal> removal_log;
  RefineOutcome refine_outcome = RefineOutcome::clean;
  std::size_t refine_passes = 0;

  std::optional<EfaSection> efa;  // empty when retention collapsed to zero
  std::vector<IbRun> ib_runs;
  std::optional<Partition> factor_partition;
  std::optional<Partition> cluster_partition;
  std::optional<AgreementReport> agreement;
  std::vector<ReconcileStep> reconciliation;
  std::vector<std::string> final_items;
  std::vector<std::string> warnings;
};

/// Pipeline failure tagged with the stage that raised it.
class PipelineError : public Error {
 public:
  PipelineError(const std::string& stage, const std::string& what)
      : Error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

inline EfaSection summarize_efa(const ResponseMatrix& responses, const EfaPass& pass, const PipelineConfig& cfg) {
  EfaSection s;
  s.solution = pass.rotated;
  s.diagnostics = pass.diagnostics;
  if (cfg.rotation == RotationChoice::both) {
    RotationOptions ro;
    ro.kaiser_normalize = cfg.kaiser_normalize;
    s.quartimax = rotate(cfg.chain_quartimax ? pass.rotated : pass.unrotated, RotationMethod::quartimax, ro);
  }
  const auto ss = column_ss(s.solution.loadings);
  for (std::size_t f = 0; f < s.solution.retained; ++f) {
    FactorSummary fs;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.solution.items(); ++i)
      if (pass.diagnostics.assignment[i] == f) {
        idx.push_back(i);
        fs.items.push_back(s.solution.item_ids[i]);
      }
    if (idx.size() >= 2) {
      try {
        fs.alpha = cronbach_alpha(responses, idx);
      } catch (const Error&) {
      }
    }
    fs.eigenvalue = s.solution.eigenvalues[f];
    fs.variance_pct = s.solution.variance_pct[f];
    fs.cumulative_pct = s.solution.cumulative_pct[f];
    fs.rotated_ss = ss[f];
    s.factors.push_back(std::move(fs));
  }
  return s;
}

// Item whose EFA evidence is weakest among the discordant ones.
inline std::string pick_discordant(const FactorSolution& sol, const AgreementReport& ag) {
  std::string best;
  double best_loading = 2.0;
  for (std::size_t i = 0; i < sol.items(); ++i) {
    const auto& id = sol.item_ids[i];
    if (std::find(ag.discordant_items.begin(), ag.discordant_items.end(), id) == ag.discordant_items.end()) continue;
    const double l = max_abs_loading(sol.loadings, i);
    if (l < best_loading) {
      best_loading = l;
      best = id;
    }
  }
  return best;
}

}  // namespace detail

/// Reliability checks, EFA refinement, IB clustering over a range of T,
/// factor/cluster comparison and (optionally) removal of discordant items
/// until both structures agree.
inline PipelineReport run_pipeline(const ResponseMatrix& input, const PipelineConfig& config) {
  detail::stage("config", [&] { config.validate(); });
  PipelineReport rep;
  rep.config = config;
  rep.generated_at = utc_timestamp();
  rep.respondents = input.respondents();
  rep.initial_items = input.item_ids();
  rep.dropped_rows = input.dropped_rows();
  rep.input_digest = sha256_hex(to_csv(input));

  const ResponseMatrix responses = detail::stage("input", [&] {
    ResponseMatrix m(input.item_ids(), input.respondents(), input.values(), config.likert_min, config.likert_max);
    m.set_dropped_rows(input.dropped_rows());
    m.check_range();
    return m;
  });
  if (rep.dropped_rows > 0)
    rep.warnings.push_back(std::to_string(rep.dropped_rows) + " incomplete rows dropped (listwise deletion)");

  rep.reliability = detail::stage("reliability", [&] {
    return assess_reliability(responses, {config.alpha_threshold, config.kmo_threshold});
  });
  for (const auto& w : rep.reliability.warnings) rep.warnings.push_back(w);

  const RefineResult refined = detail::stage("efa", [&] { return refine(responses, config.refine_config()); });
  rep.removal_log = refined.log;
  rep.refine_outcome = refined.outcome;
  rep.refine_passes = refined.passes;
  rep.final_items = refined.surviving_items;

  if (refined.outcome == RefineOutcome::degenerate_retention) {
    rep.warnings.push_back("no factor met the retention rule; factor and cluster analysis skipped");
    return rep;
  }
  if (refined.outcome == RefineOutcome::item_floor)
    rep.warnings.push_back("refinement reached the item floor of " + std::to_string(config.item_floor) +
                           " with diagnostics still flagged");

  ResponseMatrix current = responses.select([&] {
    std::vector<std::size_t> idx;
    for (const auto& id : refined.surviving_items) idx.push_back(responses.index_of(id));
    return idx;
  }());
  EfaPass pass = refined.final_pass;

  while (true) {
    rep.efa = detail::stage("efa", [&] { return detail::summarize_efa(current, pass, config); });
    const std::size_t k = pass.retained;
    const std::size_t t_hi = std::min(current.items(), config.t_max > 0 ? config.t_max : k + 1);

    rep.ib_runs = detail::stage("ib", [&] {
      const JointDistribution joint = build_joint(current);
      std::vector<IbRun> runs;
      for (std::size_t t = 1; t <= t_hi; ++t) {
        IbRun run;
        run.t_count = t;
        run.sweep = beta_sweep(joint, t, config.betas, config.seed, config.restarts);
        run.selected = select_stable_beta(run.sweep);
        runs.push_back(std::move(run));
      }
      return runs;
    });
    const IbRun* matching = nullptr;
    for (const auto& run : rep.ib_runs)
      if (run.t_count == k) matching = &run;
    if (!matching) {
      rep.warnings.push_back("no IB run with T equal to the retained factor count");
      break;
    }

    rep.factor_partition = Partition(current.item_ids(), pass.diagnostics.assignment, k);
    rep.cluster_partition = hard_partition(matching->chosen());
    rep.agreement = detail::stage("agreement", [&] { return compare(*rep.factor_partition, *rep.cluster_partition); });

    if (rep.agreement->exact_match || !config.reconcile) break;
    if (current.items() <= config.item_floor) {
      rep.warnings.push_back("reconciliation stopped at the item floor with discordant items remaining");
      break;
    }
    ReconcileStep step;
    step.removed_item = detail::pick_discordant(pass.rotated, *rep.agreement);
    step.agreement_before = *rep.agreement;
    step.items_before = current.items();
    rep.reconciliation.push_back(step);
    current = current.without(step.removed_item);
    pass = detail::stage("efa", [&] {
      return efa_pass(current, config.retention, config.primary_rotation(),
                      RotationOptions{config.kaiser_normalize}, config.diagnostic_thresholds());
    });
    rep.final_items = current.item_ids();
    if (pass.retained == 0) {
      rep.efa.reset();
      rep.ib_runs.clear();
      rep.warnings.push_back("no factor met the retention rule after reconciliation");
      break;
    }
  }
  return rep;
}

}  // namespace likertib
