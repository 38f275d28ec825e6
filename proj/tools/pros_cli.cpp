// Copyright 2026 The PROS Sampling Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: population summary, worked example, single
// simulations and the two study presets.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pros/pros.hpp"

namespace {

namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kConfigError = 2, kDataError = 3, kInternalError = 4 };

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> data, missing, seed, replicates, design, model, set_size,
      cycles, training_size, alpha, out, workers;
  std::vector<std::string> concomitants;
  bool fixed_training = false;
  bool independent_covariate = false;
  bool tied = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "Key-value settings file (flags override it)");
  app->add_option("--data", f.data, "Dataset path (default: $PROS_DATA)");
  app->add_option("--missing", f.missing, "Missing values: drop, median or const=V");
  app->add_option("--seed", f.seed, "Master seed");
  app->add_option("--workers", f.workers, "Worker threads (0 = all cores)");
}

void add_simulation(CLI::App* app, Flags& f) {
  app->add_option("--replicates", f.replicates, "Monte Carlo replicates J");
  app->add_option("--out", f.out, "Output path");
}

void add_design(CLI::App* app, Flags& f) {
  app->add_option("--design", f.design, "srs, rss, pros or logistic");
  app->add_option("--model", f.model, "Built-in ranking model (1-9, 5*)");
  app->add_option("--concomitant", f.concomitants, "NAME[:C], repeatable")
      ->take_all()
      ->allow_extra_args(false);
  app->add_option("--set-size", f.set_size, "Set size H");
  app->add_option("--cycles", f.cycles, "Cycle count n (default 54 / H)");
  app->add_option("--training-size", f.training_size, "Logistic training sample size");
  app->add_option("--alpha", f.alpha, "Explicit alpha weights a1,a2,...");
  app->add_flag("--fixed-training", f.fixed_training,
                "Fit the logistic ranker once instead of per replicate");
}

pros::RunConfig build_config(const Flags& f) {
  pros::RunConfig cfg;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw pros::ConfigError("cannot open config file '" + *f.config + "'");
    for (const auto& [k, v] : pros::parse_config_file(in)) pros::apply_setting(cfg, k, v);
  }
  const std::pair<const char*, const std::optional<std::string>*> scalar[] = {
      {"data", &f.data},       {"missing", &f.missing},
      {"seed", &f.seed},       {"replicates", &f.replicates},
      {"design", &f.design},   {"model", &f.model},
      {"set size", &f.set_size}, {"cycles", &f.cycles},
      {"training size", &f.training_size}, {"alpha", &f.alpha},
      {"out", &f.out},         {"workers", &f.workers}};
  for (const auto& [key, value] : scalar) {
    if (*value) pros::apply_setting(cfg, key, **value);
  }
  if (!f.concomitants.empty()) {
    cfg.concomitants.clear();
    for (const auto& c : f.concomitants) pros::apply_setting(cfg, "concomitant", c);
    if (!f.model) cfg.model.clear();
  }
  if (f.fixed_training) cfg.fixed_training = true;
  if (f.independent_covariate) cfg.independent_covariate = true;
  if (f.tied) cfg.tied = true;
  return cfg;
}

pros::Population load(const pros::RunConfig& cfg, bool with_covariate) {
  const auto path = pros::resolve_data_path(cfg);
  if (!fs::exists(path)) throw pros::ConfigError("dataset not found: " + path);
  return pros::load_population(path, pros::load_options(cfg, with_covariate));
}

int cmd_stats(const pros::RunConfig& cfg) {
  const auto pop = load(cfg, cfg.independent_covariate);
  std::vector<std::pair<std::string, double>> rows;
  for (const auto& name : pop.concomitant_names()) {
    rows.emplace_back(name, pros::correlation(pop, name));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) > std::abs(b.second);
  });
  std::cout << "records," << pop.size() << '\n'
            << "malignant," << pros::malignant_count(pop) << '\n'
            << "proportion," << pros::fixed4(pros::population_proportion(pop)) << "\n\n"
            << "concomitant,rho\n";
  for (const auto& [name, rho] : rows) std::cout << name << ',' << pros::fixed4(rho) << '\n';
  return kOk;
}

void print_matrix(std::ostream& os, const pros::StrengthMatrix& m, int digits) {
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << "  u" << r + 1 << "1 ";
    for (std::size_t c = 0; c < m.size(); ++c) {
      os << ' ' << std::fixed << std::setprecision(digits) << m(r, c);
    }
    os << '\n';
  }
}

int cmd_example() {
  const pros::WorkedExample ex;
  const auto res = pros::run_worked_example(ex);
  auto& os = std::cout;
  os << "set of H = 5 units, target judgment rank r = " << ex.target_rank + 1 << "\n\n";
  for (std::size_t k = 0; k < ex.concomitants.size(); ++k) {
    os << "k=" << k + 1 << " " << ex.concomitants[k] << " (c = "
       << pros::shortest(ex.ties[k].c) << ", alpha = " << pros::fixed4(ex.alpha[k])
       << ")\n  ranks:";
    const auto& a = res.assignments[k];
    for (std::size_t u = 0; u < a.size(); ++u) {
      os << " u" << u + 1 << "1{";
      const auto pos = a.positions(u);
      for (std::size_t i = 0; i < pos.size(); ++i) os << (i ? "," : "") << pos[i] + 1;
      os << '}';
    }
    os << "\n  D:\n";
    print_matrix(os, res.matrices[k], 4);
  }
  os << "\naveraged matrix Dbar:\n";
  print_matrix(os, res.dbar, 5);
  os << "\ncolumn " << ex.target_rank + 1 << " maximizers:";
  for (std::size_t i = 0; i < res.maximizers.size(); ++i) {
    os << " u" << res.maximizers[i] + 1 << "1 (gamma = " << pros::fixed4(res.gammas[i])
       << ")";
  }
  os << "\nselected: u" << res.selection.unit + 1 << "1\nweights:";
  for (double w : res.selection.weights) os << ' ' << pros::fixed4(w);
  os << '\n';
  return kOk;
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw pros::ConfigError("cannot write '" + out + "'");
  f << text;
  if (!f) throw pros::DataError("failed writing '" + out + "'");
}

int cmd_simulate(const pros::RunConfig& cfg) {
  const auto pop = load(cfg, true);
  pros::StudySpec spec;
  spec.replicates = cfg.replicates.value_or(10000);
  spec.master_seed = cfg.seed;
  spec.configs.push_back({"simulate", pros::design_config(cfg)});
  const auto results = pros::run_study(pop, spec, cfg.workers);
  std::ostringstream csv;
  pros::write_csv(csv, spec, results);
  write_output(cfg.out, csv.str());
  const auto base = pros::baseline_of(pop);
  const auto& r = results.front();
  std::cerr << "N'=" << base.population << " p=" << pros::fixed4(base.p)
            << " srs_sd=" << pros::fixed4(base.srs_sd(spec.configs[0].design.sample_size()))
            << " average=" << pros::fixed4(r.average) << " sd=" << pros::fixed4(r.sd)
            << " sd_reduction=" << pros::fixed4(r.sd_reduction_pct) << "%\n";
  return kOk;
}

std::string study1_summary(const pros::StudySpec& spec,
                           const std::vector<pros::StudyResult>& res) {
  std::ostringstream os;
  const std::vector<std::size_t> sizes{3, 6, 9};
  const auto mono =
      pros::check_monotone_in_h(spec, res, "pros", {"Model 1", "Model 3", "Model 5"}, sizes);
  const auto dom = pros::check_dominance(spec, res, "pros", "Model 5", "Model 2", sizes);
  for (const auto& c : {mono, dom}) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  for (const char* m : {"Model 3", "Model 4"}) {
    auto mp = pros::find_config(spec, "pros", pros::Design::pros_multi, m, 3);
    auto l = pros::find_config(spec, "logistic", pros::Design::rss_logistic, m, 3);
    if (!mp || !l) continue;
    const double re = pros::relative_efficiency(res[*l].sd * res[*l].sd,
                                                res[*mp].sd * res[*mp].sd);
    os << "relative efficiency (logistic vs PROS) " << m << " H=3: " << pros::fixed4(re)
       << ", logistic sample size for equal precision: "
       << pros::fixed4(re * static_cast<double>(pros::kStudySampleSize)) << '\n';
  }
  return os.str();
}

std::string study2_summary(const pros::StudySpec& spec,
                           const std::vector<pros::StudyResult>& res) {
  std::ostringstream os;
  const std::vector<std::size_t> sizes{2, 3, 6};
  const pros::PropertyCheck checks[] = {
      pros::check_ci_decreasing(spec, res, "no_ties", "Model 5", sizes),
      pros::check_ci_decreasing(spec, res, "ties", "Model 5", sizes),
      pros::check_ties_not_worse(spec, res, "Model 5", 6)};
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  return os.str();
}

int cmd_study(const pros::RunConfig& cfg, const std::string& which) {
  const auto pop = load(cfg, true);
  const std::size_t J = cfg.replicates.value_or(50000);
  pros::StudySpec spec;
  std::vector<std::pair<std::string, std::string>> tables;
  if (which == "study1") {
    spec = pros::study1_preset(pop, J, cfg.seed, cfg.tied);
    tables = {{"srs", "study1_srs.csv"},
              {"rss_one", "study1_rss_one_concomitant.csv"},
              {"pros", "study1_pros.csv"},
              {"logistic", "study1_logistic.csv"}};
  } else if (which == "study2") {
    spec = pros::study2_preset(pop, J, cfg.seed);
    tables = {{"no_ties", "study2_no_ties.csv"}, {"ties", "study2_ties.csv"}};
  } else {
    throw pros::ConfigError("unknown study '" + which + "' (study1 or study2)");
  }
  for (auto& c : spec.configs) c.design.training_size = cfg.training_size;
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  fs::create_directories(dir);
  const auto results = pros::run_study(pop, spec, cfg.workers);
  for (const auto& [group, file] : tables) {
    std::ostringstream csv;
    pros::write_csv(csv, spec, results, group);
    write_output((dir / file).string(), csv.str());
  }
  const auto summary =
      which == "study1" ? study1_summary(spec, results) : study2_summary(spec, results);
  write_output((dir / (which + "_summary.txt")).string(), summary);
  std::cerr << summary;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-based sampling designs for population proportions"};
  app.require_subcommand(1);
  Flags flags;

  auto* stats = app.add_subcommand("stats", "Population size, proportion and correlations");
  add_common(stats, flags);
  stats->add_flag("--independent-covariate", flags.independent_covariate,
                  "Append a synthetic independent covariate");

  auto* example = app.add_subcommand("example", "Replay the five-unit worked example");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of one design");
  add_common(simulate, flags);
  add_simulation(simulate, flags);
  add_design(simulate, flags);

  std::string which;
  auto* study = app.add_subcommand("study", "Run a study preset (study1 or study2)");
  study->add_option("which", which, "study1 or study2")->required();
  add_common(study, flags);
  add_simulation(study, flags);
  study->add_option("--training-size", flags.training_size, "Logistic training sample size");
  study->add_flag("--tied", flags.tied, "Use c = delta / H tie divisors for PROS models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const auto cfg = build_config(flags);
    if (*stats) return cmd_stats(cfg);
    if (*example) return cmd_example();
    if (*simulate) return cmd_simulate(cfg);
    if (*study) return cmd_study(cfg, which);
  } catch (const pros::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const pros::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}
