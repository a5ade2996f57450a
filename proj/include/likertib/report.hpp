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

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "likertib/efa.hpp"
#include "likertib/error.hpp"
#include "likertib/pipeline.hpp"

namespace likertib {

using Json = nlohmann::ordered_json;

// JSON report schema (version 1). Key order is fixed; numbers are written at
// full double precision. "generated_at" is the only field that varies
// between identical runs.
inline constexpr int kReportSchemaVersion = 1;

namespace detail {

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  return rows;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline RetentionRule parse_retention(const std::string& s) {
  if (s == "kaiser") return RetentionRule::kaiser;
  if (s == "scree") return RetentionRule::scree;
  if (s == "both") return RetentionRule::both;
  throw InvalidInput("unknown retention rule '" + s + "' (expected kaiser, scree or both)");
}

inline RotationChoice parse_rotation(const std::string& s) {
  if (s == "varimax") return RotationChoice::varimax;
  if (s == "quartimax") return RotationChoice::quartimax;
  if (s == "both") return RotationChoice::both;
  throw InvalidInput("unknown rotation '" + s + "' (expected varimax, quartimax or both)");
}

}  // namespace detail

inline Json config_to_json(const PipelineConfig& c) {
  return Json{{"likert_min", c.likert_min},
              {"likert_max", c.likert_max},
              {"alpha_threshold", c.alpha_threshold},
              {"kmo_threshold", c.kmo_threshold},
              {"loading_floor", c.loading_floor},
              {"communality_cutoff", c.communality_cutoff},
              {"min_items_per_factor", c.min_items_per_factor},
              {"retention", to_string(c.retention)},
              {"rotation", to_string(c.rotation)},
              {"kaiser_normalize", c.kaiser_normalize},
              {"chain_quartimax", c.chain_quartimax},
              {"t_max", c.t_max},
              {"betas", c.betas},
              {"restarts", c.restarts},
              {"seed", c.seed},
              {"item_floor", c.item_floor},
              {"reconcile", c.reconcile}};
}

/// Overrides the fields present in `j`; unknown keys are rejected.
inline PipelineConfig config_from_json(const Json& j, PipelineConfig c = {}) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "likert_min") c.likert_min = v.get<int>();
    else if (key == "likert_max") c.likert_max = v.get<int>();
    else if (key == "alpha_threshold") c.alpha_threshold = v.get<double>();
    else if (key == "kmo_threshold") c.kmo_threshold = v.get<double>();
    else if (key == "loading_floor") c.loading_floor = v.get<double>();
    else if (key == "communality_cutoff") c.communality_cutoff = v.get<double>();
    else if (key == "min_items_per_factor") c.min_items_per_factor = v.get<std::size_t>();
    else if (key == "retention") c.retention = detail::parse_retention(v.get<std::string>());
    else if (key == "rotation") c.rotation = detail::parse_rotation(v.get<std::string>());
    else if (key == "kaiser_normalize") c.kaiser_normalize = v.get<bool>();
    else if (key == "chain_quartimax") c.chain_quartimax = v.get<bool>();
    else if (key == "t_max") c.t_max = v.get<std::size_t>();
    else if (key == "betas") c.betas = v.get<std::vector<double>>();
    else if (key == "restarts") c.restarts = v.get<std::size_t>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "item_floor") c.item_floor = v.get<std::size_t>();
    else if (key == "reconcile") c.reconcile = v.get<bool>();
    else throw InvalidInput("unknown config key '" + key + "'");
  }
  return c;
}

inline Json solution_json(const FactorSolution& s) {
  return Json{{"rotation", to_string(s.rotation)},
              {"items", s.item_ids},
              {"retained", s.retained},
              {"loadings", detail::matrix_json(s.loadings)},
              {"communalities", s.communalities},
              {"eigenvalues", s.eigenvalues},
              {"variance_pct", s.variance_pct},
              {"cumulative_pct", s.cumulative_pct},
              {"rotation_matrix", detail::matrix_json(s.rotation_matrix)},
              {"criterion_before", s.criterion_before},
              {"criterion_after", s.criterion_after},
              {"rotation_sweeps", s.rotation_sweeps}};
}

inline Json partition_json(const Partition& p) {
  Json groups = Json::array();
  for (std::size_t g = 0; g < p.group_count; ++g) groups.push_back(p.members(g));
  return Json{{"group_count", p.group_count}, {"groups", groups}, {"empty_groups", p.empty_groups()}};
}

inline Json agreement_json(const AgreementReport& a) {
  Json pairs = Json::array();
  for (const auto& [f, c] : a.matched_group_pairs) pairs.push_back({f, c});
  return Json{{"concordant_items", a.concordant_items},
              {"discordant_items", a.discordant_items},
              {"matched_group_pairs", pairs},
              {"pairwise_agreement", a.pairwise_agreement},
              {"exact_match", a.exact_match}};
}

inline Json report_to_json(const PipelineReport& r) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["provenance"] = Json{{"tool", "likertib"},
                         {"version", kVersion},
                         {"generated_at", r.generated_at},
                         {"input_digest", "sha256:" + r.input_digest},
                         {"seed", r.config.seed},
                         {"config", config_to_json(r.config)}};
  j["input"] = Json{{"respondents", r.respondents}, {"items", r.initial_items}, {"dropped_rows", r.dropped_rows}};

  const auto& rel = r.reliability;
  j["reliability"] = Json{{"cronbach_alpha", rel.cronbach_alpha},
                          {"alpha_acceptable", rel.alpha_acceptable},
                          {"kmo", detail::optional_json(rel.kmo)},
                          {"kmo_per_item", rel.kmo_per_item},
                          {"kmo_acceptable", rel.kmo_acceptable},
                          {"bartlett_chi2", detail::optional_json(rel.bartlett_chi2)},
                          {"bartlett_df", rel.bartlett_df}};

  Json log = Json::array();
  for (const auto& e : r.removal_log)
    log.push_back(Json{{"item", e.item_id},
                       {"rule", to_string(e.rule)},
                       {"communality", e.communality},
                       {"max_loading", e.max_loading},
                       {"factor", e.factor},
                       {"items_before", e.items_before},
                       {"retained", e.retained}});
  j["refinement"] = Json{{"outcome", to_string(r.refine_outcome)}, {"passes", r.refine_passes}, {"removals", log}};

  if (r.efa) {
    Json factors = Json::array();
    for (const auto& f : r.efa->factors)
      factors.push_back(Json{{"items", f.items},
                             {"alpha", detail::optional_json(f.alpha)},
                             {"eigenvalue", f.eigenvalue},
                             {"variance_pct", f.variance_pct},
                             {"cumulative_pct", f.cumulative_pct},
                             {"rotated_ss", f.rotated_ss}});
    j["efa"] = Json{{"solution", solution_json(r.efa->solution)},
                    {"quartimax", r.efa->quartimax ? solution_json(*r.efa->quartimax) : Json(nullptr)},
                    {"factors", factors}};
  } else {
    j["efa"] = nullptr;
  }

  Json ib = Json::array();
  for (const auto& run : r.ib_runs) {
    Json points = Json::array();
    for (const auto& bp : run.sweep) {
      const auto& s = bp.solution;
      points.push_back(Json{{"beta", bp.beta},
                            {"i_xt", s.i_xt},
                            {"i_ty", s.i_ty},
                            {"l_value", s.l_value},
                            {"iterations", s.iterations},
                            {"converged", s.converged},
                            {"restart", s.restart},
                            {"p_t", s.p_t},
                            {"p_t_given_x", detail::matrix_json(s.p_t_given_x)},
                            {"partition", partition_json(hard_partition(s))}});
    }
    ib.push_back(Json{{"t", run.t_count}, {"selected_beta", run.sweep[run.selected].beta}, {"sweep", points}});
  }
  j["ib"] = ib;
  j["factor_partition"] = r.factor_partition ? partition_json(*r.factor_partition) : Json(nullptr);
  j["cluster_partition"] = r.cluster_partition ? partition_json(*r.cluster_partition) : Json(nullptr);
  j["agreement"] = r.agreement ? agreement_json(*r.agreement) : Json(nullptr);

  Json steps = Json::array();
  for (const auto& s : r.reconciliation)
    steps.push_back(Json{{"removed_item", s.removed_item},
                         {"items_before", s.items_before},
                         {"agreement_before", agreement_json(s.agreement_before)}});
  j["reconciliation"] = steps;
  j["final_items"] = r.final_items;
  j["warnings"] = r.warnings;
  return j;
}

namespace detail {

inline std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

inline std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

inline std::string removal_reason(RemovalRule r) {
  switch (r) {
    case RemovalRule::low_communality: return "low communality";
    case RemovalRule::underpopulated_factor: return "factor with too few items";
    case RemovalRule::cross_loading: return "cross-loading";
    case RemovalRule::weak_loading: return "no loading above the floor";
  }
  return "?";
}

inline void loading_table(std::ostream& out, const FactorSolution& sol, const std::vector<std::size_t>& assignment) {
  for (std::size_t f = 0; f < sol.retained; ++f) {
    out << "  Factor " << f + 1 << "\n";
    for (std::size_t i = 0; i < sol.items(); ++i)
      if (assignment[i] == f)
        out << "    " << std::left << std::setw(14) << sol.item_ids[i] << std::right << fixed(sol.loadings(i, f), 2)
            << "\n";
  }
}

}  // namespace detail

/// Plain-text report laid out like the usual EFA write-up tables.
inline void write_text_report(const PipelineReport& r, std::ostream& out) {
  using detail::fixed;
  out << "Survey instrument analysis (likertib " << kVersion << ")\n";
  out << "Input: " << r.respondents << " respondents, " << r.initial_items.size() << " items, " << r.dropped_rows
      << " incomplete rows dropped\n";
  out << "Input digest: sha256:" << r.input_digest << "\n\n";

  const auto& rel = r.reliability;
  out << "Reliability and sampling adequacy\n";
  out << "  Cronbach's alpha      " << fixed(rel.cronbach_alpha, 3) << (rel.alpha_acceptable ? "  acceptable" : "  BELOW")
      << " (threshold " << fixed(r.config.alpha_threshold, 2) << ")\n";
  out << "  KMO                   " << (rel.kmo ? fixed(*rel.kmo, 3) : std::string("n/a"))
      << (rel.kmo_acceptable ? "  acceptable" : "  BELOW") << " (threshold " << fixed(r.config.kmo_threshold, 2) << ")\n";
  out << "  Bartlett chi-square   " << (rel.bartlett_chi2 ? fixed(*rel.bartlett_chi2, 3) : std::string("n/a"))
      << " (df = " << rel.bartlett_df << ")\n\n";

  out << "Item refinement\n";
  if (r.removal_log.empty()) {
    out << "  no items removed\n";
  } else {
    std::size_t n = 0;
    for (const auto& e : r.removal_log)
      out << "  " << ++n << ". removed " << e.item_id << " (" << detail::removal_reason(e.rule) << "; communality "
          << fixed(e.communality, 2) << ", max loading " << fixed(e.max_loading, 2) << ", " << e.items_before
          << " items, " << e.retained << " factors)\n";
  }
  out << "  outcome: " << to_string(r.refine_outcome) << " after " << r.refine_passes << " passes\n\n";

  if (r.efa) {
    const auto& efa = *r.efa;
    out << "Table 1. Factor composition and Cronbach's alpha\n";
    for (std::size_t f = 0; f < efa.factors.size(); ++f)
      out << "  Factor " << f + 1 << ": " << detail::join(efa.factors[f].items) << "  alpha "
          << (efa.factors[f].alpha ? fixed(*efa.factors[f].alpha, 3) : std::string("n/a")) << "\n";
    out << "\nTable 2. Factor loadings (" << to_string(efa.solution.rotation) << ")\n";
    detail::loading_table(out, efa.solution, efa.diagnostics.assignment);
    if (efa.quartimax) {
      out << "\nTable 2b. Factor loadings (quartimax)\n";
      detail::loading_table(out, *efa.quartimax, assign_items(efa.quartimax->loadings));
    }
    out << "\nTable 3. Alpha, explained variance and eigenvalues\n";
    out << "  Factor   Alpha   % Variance   Cumulative %   Eigenvalue\n";
    for (std::size_t f = 0; f < efa.factors.size(); ++f) {
      const auto& fs = efa.factors[f];
      out << "  " << std::setw(6) << f + 1 << "   " << std::setw(5)
          << (fs.alpha ? fixed(*fs.alpha, 3) : std::string("n/a")) << "   " << std::setw(10)
          << fixed(fs.variance_pct, 2) << "   " << std::setw(12) << fixed(fs.cumulative_pct, 2) << "   "
          << std::setw(10) << fixed(fs.eigenvalue, 2) << "\n";
    }
    out << "\n";
  } else {
    out << "Factor analysis: no factors retained\n\n";
  }

  if (!r.ib_runs.empty()) {
    out << "Information bottleneck clustering\n";
    for (const auto& run : r.ib_runs) {
      const auto& s = run.chosen();
      const Partition p = hard_partition(s);
      out << "  T = " << run.t_count << " (beta " << run.sweep[run.selected].beta << ", I(X;T) " << fixed(s.i_xt, 4)
          << ", I(T;Y) " << fixed(s.i_ty, 4) << ")\n";
      for (std::size_t t = 0; t < p.group_count; ++t) {
        const auto members = p.members(t);
        out << "    T" << t + 1 << ": " << (members.empty() ? std::string("(empty)") : detail::join(members)) << "\n";
      }
    }
    out << "\n";
  }

  if (r.agreement) {
    out << "Factor/cluster agreement\n";
    out << "  Rand index " << fixed(r.agreement->pairwise_agreement, 3) << ", "
        << (r.agreement->exact_match ? "structures coincide" : "structures differ") << "\n";
    if (!r.agreement->discordant_items.empty())
      out << "  discordant items: " << detail::join(r.agreement->discordant_items) << "\n";
    out << "\n";
  }
  out << "Reconciliation\n";
  if (r.reconciliation.empty()) {
    out << "  no items removed\n";
  } else {
    for (const auto& s : r.reconciliation)
      out << "  removed " << s.removed_item << " (discordant among: " << detail::join(s.agreement_before.discordant_items)
          << ")\n";
  }
  out << "  final items (" << r.final_items.size() << "): " << detail::join(r.final_items) << "\n";

  if (!r.warnings.empty()) {
    out << "\nWarnings\n";
    for (const auto& w : r.warnings) out << "  - " << w << "\n";
  }
}

inline std::string text_report(const PipelineReport& r) {
  std::ostringstream s;
  write_text_report(r, s);
  return s.str();
}

enum class ReportFormat { text, json };

/// Writes the report to `path`, or to standard output when path is "-".
inline void emit_report(const PipelineReport& r, ReportFormat format, const std::string& path, std::ostream& stdout_stream) {
  const std::string body = format == ReportFormat::json ? report_to_json(r).dump(2) + "\n" : text_report(r);
  if (path == "-") {
    stdout_stream << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw Error("failed writing report to '" + path + "'");
}

}  // namespace likertib
