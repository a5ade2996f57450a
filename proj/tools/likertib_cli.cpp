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

// likertib command line: `analyze` runs the full survey pipeline on a CSV,
// `synth` writes simulated Likert data with a planted factor structure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "likertib/likertib.hpp"

namespace {

using namespace likertib;

struct AnalyzeArgs {
  std::string input;
  std::string config_path;
  std::string json_path;
  std::string text_path = "-";
  int likert_min = 1, likert_max = 5;
  double alpha_threshold = 0.7, kmo_threshold = 0.8, loading_floor = 0.4, communality_cutoff = 0.5;
  std::size_t min_items = 3, t_max = 0, restarts = 10, item_floor = 6;
  std::string retention = "kaiser", rotation = "varimax";
  std::vector<double> betas;
  std::uint64_t seed = 1;
  bool no_reconcile = false, no_kaiser_normalize = false, chain_quartimax = false;
};

PipelineConfig build_config(const CLI::App& cmd, const AnalyzeArgs& a) {
  PipelineConfig cfg;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw Error("cannot open config file '" + a.config_path + "'");
    cfg = config_from_json(Json::parse(in));
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--likert-min")) cfg.likert_min = a.likert_min;
  if (given("--likert-max")) cfg.likert_max = a.likert_max;
  if (given("--alpha-threshold")) cfg.alpha_threshold = a.alpha_threshold;
  if (given("--kmo-threshold")) cfg.kmo_threshold = a.kmo_threshold;
  if (given("--loading-floor")) cfg.loading_floor = a.loading_floor;
  if (given("--communality-cutoff")) cfg.communality_cutoff = a.communality_cutoff;
  if (given("--min-items-per-factor")) cfg.min_items_per_factor = a.min_items;
  if (given("--retention")) cfg.retention = detail::parse_retention(a.retention);
  if (given("--rotation")) cfg.rotation = detail::parse_rotation(a.rotation);
  if (given("--t-max")) cfg.t_max = a.t_max;
  if (given("--betas")) cfg.betas = a.betas;
  if (given("--restarts")) cfg.restarts = a.restarts;
  if (given("--seed")) cfg.seed = a.seed;
  if (given("--item-floor")) cfg.item_floor = a.item_floor;
  if (given("--no-reconcile")) cfg.reconcile = false;
  if (given("--no-kaiser-normalize")) cfg.kaiser_normalize = false;
  if (given("--chain-quartimax")) cfg.chain_quartimax = true;
  cfg.validate();
  return cfg;
}

int run_analyze(const CLI::App& cmd, const AnalyzeArgs& a) {
  const PipelineConfig cfg = build_config(cmd, a);
  const ResponseMatrix responses = load_csv(a.input, CsvOptions{cfg.likert_min, cfg.likert_max});
  const PipelineReport report = run_pipeline(responses, cfg);
  emit_report(report, ReportFormat::text, a.text_path, std::cout);
  if (!a.json_path.empty()) emit_report(report, ReportFormat::json, a.json_path, std::cout);
  return 0;
}

struct SynthArgs {
  std::string fixture = "planted";
  std::size_t items = 17, factors = 3, respondents = 202;
  double loading = 0.7, noise_sd = 0.0;
  int likert_min = 1, likert_max = 5;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int run_synth(const SynthArgs& a) {
  PlantedModel model;
  if (a.fixture == "planted") {
    model = block_model(a.items, a.factors, a.loading, a.seed);
  } else if (a.fixture == "trajectory") {
    model = trajectory_model(a.seed);
  } else {
    throw InvalidInput("unknown fixture '" + a.fixture + "' (expected planted or trajectory)");
  }
  model.noise_sd = a.noise_sd;
  model.likert_min = a.likert_min;
  model.likert_max = a.likert_max;
  const ResponseMatrix data = generate(model, a.respondents);
  if (a.output == "-") {
    write_csv(data, std::cout);
    return 0;
  }
  std::ofstream out(a.output, std::ios::binary);
  if (!out) throw Error("cannot open '" + a.output + "' for writing");
  write_csv(data, out);
  if (!out) throw Error("failed writing '" + a.output + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Likert survey validation: reliability, exploratory factor analysis and information bottleneck clustering"};
  app.set_version_flag("--version", likertib::kVersion);
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Run the full analysis pipeline on a survey CSV");
  analyze->add_option("input", aa.input, "CSV: header of item ids, one respondent per row")->required()->check(CLI::ExistingFile);
  analyze->add_option("--config", aa.config_path, "JSON config file (flags override it)");
  analyze->add_option("--json", aa.json_path, "Write the machine-readable report here");
  analyze->add_option("--text", aa.text_path, "Write the text report here instead of stdout");
  analyze->add_option("--likert-min", aa.likert_min, "Lowest valid response");
  analyze->add_option("--likert-max", aa.likert_max, "Highest valid response");
  analyze->add_option("--alpha-threshold", aa.alpha_threshold, "Acceptable Cronbach's alpha (exclusive)");
  analyze->add_option("--kmo-threshold", aa.kmo_threshold, "Acceptable KMO (exclusive)");
  analyze->add_option("--loading-floor", aa.loading_floor, "Minimum salient loading");
  analyze->add_option("--communality-cutoff", aa.communality_cutoff, "Items below this communality are removed");
  analyze->add_option("--min-items-per-factor", aa.min_items, "Smallest acceptable factor");
  analyze->add_option("--retention", aa.retention, "kaiser | scree | both")->check(CLI::IsMember({"kaiser", "scree", "both"}));
  analyze->add_option("--rotation", aa.rotation, "varimax | quartimax | both")
      ->check(CLI::IsMember({"varimax", "quartimax", "both"}));
  analyze->add_option("--t-max", aa.t_max, "Largest IB cluster count (default: retained factors + 1)");
  analyze->add_option("--betas", aa.betas, "Ascending IB beta schedule, comma separated")->delimiter(',');
  analyze->add_option("--restarts", aa.restarts, "IB random restarts per beta");
  analyze->add_option("--seed", aa.seed, "Seed for IB initialization");
  analyze->add_option("--item-floor", aa.item_floor, "Never refine below this many items");
  analyze->add_flag("--no-reconcile", aa.no_reconcile, "Skip removal of items where factors and clusters disagree");
  analyze->add_flag("--no-kaiser-normalize", aa.no_kaiser_normalize, "Rotate raw rather than row-normalized loadings");
  analyze->add_flag("--chain-quartimax", aa.chain_quartimax, "With --rotation both, start quartimax from varimax");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Write simulated Likert data with a planted factor structure");
  synth->add_option("--fixture", sa.fixture, "planted | trajectory (20 items: 17 clean, 1 weak, 2 paired)")
      ->check(CLI::IsMember({"planted", "trajectory"}));
  synth->add_option("--items", sa.items, "Items (planted fixture)");
  synth->add_option("--factors", sa.factors, "Factors (planted fixture)");
  synth->add_option("--loading", sa.loading, "Primary loading (planted fixture)");
  synth->add_option("--noise-sd", sa.noise_sd, "Extra measurement noise");
  synth->add_option("--respondents,-n", sa.respondents, "Number of respondents");
  synth->add_option("--likert-min", sa.likert_min, "Lowest response");
  synth->add_option("--likert-max", sa.likert_max, "Highest response");
  synth->add_option("--seed", sa.seed, "Random seed");
  synth->add_option("--output,-o", sa.output, "Output CSV path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*analyze) return run_analyze(*analyze, aa);
    if (*synth) return run_synth(sa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
