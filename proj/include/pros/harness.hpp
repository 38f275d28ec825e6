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

#pragma once

// Replicated Monte Carlo studies. Replicate j of configuration i draws from
// StreamRng::derive(master_seed, i, j), so estimates do not depend on the
// worker count or on scheduling; statistics are computed after all
// replicates have been stored in replicate order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pros/dataset.hpp"
#include "pros/designs.hpp"
#include "pros/estimators.hpp"
#include "pros/logistic.hpp"
#include "pros/models.hpp"
#include "pros/random.hpp"

namespace pros {

struct StudyConfig {
  std::string group;  // output table the result belongs to
  DesignConfig design;
};

struct StudySpec {
  std::vector<StudyConfig> configs;
  std::size_t replicates = 10000;
  std::uint64_t master_seed = 20150101;
  FitOptions fit_options;
};

inline constexpr std::size_t kStudySampleSize = 54;

/// Population size, ingested proportion and the analytic SRS SD used as the
/// baseline for SD reductions.
struct Baseline {
  std::size_t population = 0;
  double p = 0;

  double srs_sd(std::size_t m) const { return srs_sd_analytic(p, population, m); }
};

inline Baseline baseline_of(const Population& pop) {
  return {pop.size(), population_proportion(pop)};
}

namespace detail {

inline constexpr std::uint64_t kFixedTrainingStream =
    std::numeric_limits<std::uint64_t>::max();

struct PreparedConfig {
  const DesignConfig* cfg = nullptr;
  std::optional<PreparedModel> model;
  std::optional<LogisticFit> fixed_fit;
};

inline PreparedConfig prepare_config(const Population& pop, const DesignConfig& cfg,
                                     std::size_t index, const StudySpec& spec) {
  PreparedConfig pc;
  pc.cfg = &cfg;
  if (cfg.set_size < 1 || cfg.cycles < 1) {
    throw ConfigError("set size and cycle count must be positive");
  }
  if (cfg.design == Design::srs) {
    if (cfg.sample_size() > pop.size()) {
      throw ConfigError("SRS size exceeds the population");
    }
    return pc;
  }
  if (cfg.set_size > pop.size()) throw ConfigError("set size exceeds the population");
  pc.model = prepare_model(pop, cfg.model);
  if (cfg.design == Design::rss_one_concomitant && pc.model->columns.size() != 1) {
    throw ConfigError("one-concomitant RSS needs exactly one concomitant");
  }
  if (cfg.design == Design::rss_logistic && cfg.fixed_training) {
    auto rng = StreamRng::derive(spec.master_seed, index, kFixedTrainingStream);
    pc.fixed_fit = fit(draw_training(pop, *pc.model, cfg.training_size, rng),
                       spec.fit_options);
  }
  return pc;
}

struct Worker {
  DrawWorkspace ws;
  ReplicateSample sample;
};

inline double run_replicate(const Population& pop, const PreparedConfig& pc,
                            const StudySpec& spec, StreamRng& rng, Worker& w) {
  const auto& cfg = *pc.cfg;
  switch (cfg.design) {
    case Design::srs:
      draw_srs(pop, cfg.sample_size(), rng, w.ws, w.sample);
      return estimate_rss(w.sample);
    case Design::rss_one_concomitant:
      draw_rss_one(pop, cfg, *pc.model, rng, w.ws, w.sample);
      return estimate_rss(w.sample);
    case Design::pros_multi:
      draw_pros(pop, cfg, *pc.model, rng, w.ws, w.sample);
      return estimate_pros(w.sample);
    case Design::rss_logistic: {
      if (pc.fixed_fit) {
        draw_rss_logistic(pop, cfg, *pc.model, *pc.fixed_fit, rng, w.ws, w.sample);
      } else {
        const auto trained =
            fit(draw_training(pop, *pc.model, cfg.training_size, rng), spec.fit_options);
        draw_rss_logistic(pop, cfg, *pc.model, trained, rng, w.ws, w.sample);
      }
      return estimate_rss(w.sample);
    }
  }
  throw InternalError("unhandled design");
}

}  // namespace detail

inline unsigned default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

/// The J replicate estimates of configuration `index` of `spec`.
inline std::vector<double> replicate_estimates(const Population& pop,
                                               const StudySpec& spec,
                                               std::size_t index,
                                               unsigned workers = 0) {
  const auto& cfg = spec.configs.at(index).design;
  const auto pc = detail::prepare_config(pop, cfg, index, spec);
  const std::size_t J = spec.replicates;
  std::vector<double> estimates(J);
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(J, 1)));

  constexpr std::size_t kChunk = 64;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};
  auto work = [&] {
    detail::Worker w;
    try {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= J) break;
        const std::size_t end = std::min(J, begin + kChunk);
        for (std::size_t j = begin; j < end; ++j) {
          auto rng = StreamRng::derive(spec.master_seed, index, j);
          estimates[j] = detail::run_replicate(pop, pc, spec, rng, w);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return estimates;
}

/// Runs every configuration; results are index-aligned with spec.configs.
inline std::vector<StudyResult> run_study(const Population& pop,
                                          const StudySpec& spec,
                                          unsigned workers = 0) {
  if (spec.replicates < 2) throw ConfigError("need at least 2 replicates");
  const auto base = baseline_of(pop);
  std::vector<StudyResult> results;
  results.reserve(spec.configs.size());
  for (std::size_t i = 0; i < spec.configs.size(); ++i) {
    const auto est = replicate_estimates(pop, spec, i, workers);
    const auto m = spec.configs[i].design.sample_size();
    results.push_back(summarize(est, base.srs_sd(std::min(m, pop.size()))));
  }
  return results;
}

/// Throws ConfigError when a configuration names a concomitant the
/// population lacks.
inline void validate_columns(const Population& pop, const StudySpec& spec) {
  for (const auto& c : spec.configs) {
    if (c.design.design == Design::srs) continue;
    for (const auto& con : c.design.model.concomitants) pop.column_index(con.name);
  }
}

inline DesignConfig make_config(Design d, RankingModel model, std::size_t h,
                                std::size_t sample_size = kStudySampleSize) {
  if (h == 0 || sample_size % h != 0) {
    throw ConfigError("sample size must be a multiple of the set size");
  }
  DesignConfig c;
  c.design = d;
  c.set_size = h;
  c.cycles = sample_size / h;
  c.model = std::move(model);
  return c;
}

inline RankingModel single_concomitant(std::string_view name, double c = 1.0) {
  return {std::string(name), {{std::string(name), TieStructure{c, true}}}, std::nullopt};
}

/// Comparison of SRS, one-concomitant RSS, PROS (Models 1-9) and
/// logistic-ranked RSS (Models 1-9) at H in {3, 6, 9} with nH = 54. With
/// `tied` the PROS models use the c = delta / H divisors instead of c = 1.
inline StudySpec study1_preset(const Population& pop, std::size_t replicates = 50000,
                               std::uint64_t seed = 20150101, bool tied = false) {
  StudySpec spec;
  spec.replicates = replicates;
  spec.master_seed = seed;
  const std::size_t sizes[] = {3, 6, 9};
  {
    DesignConfig srs;
    srs.design = Design::srs;
    srs.set_size = 1;
    srs.cycles = kStudySampleSize;
    srs.model.name = "-";
    spec.configs.push_back({"srs", srs});
  }
  const std::string_view rss_concomitants[] = {
      wbcd::kBareNuclei, wbcd::kCellShape, wbcd::kCellSize,
      wbcd::kNormalNucleoli, wbcd::kSubjectId, wbcd::kIndependentCovariate};
  for (auto name : rss_concomitants) {
    for (auto h : sizes) {
      spec.configs.push_back(
          {"rss_one", make_config(Design::rss_one_concomitant, single_concomitant(name), h)});
    }
  }
  for (int m = 1; m <= 9; ++m) {
    for (auto h : sizes) {
      auto model = builtin_model("Model " + std::to_string(m));
      if (tied) model = with_tied_divisors(std::move(model), h);
      spec.configs.push_back({"pros", make_config(Design::pros_multi, std::move(model), h)});
    }
  }
  for (int m = 1; m <= 9; ++m) {
    for (auto h : sizes) {
      spec.configs.push_back(
          {"logistic", make_config(Design::rss_logistic,
                                   builtin_model("Model " + std::to_string(m)), h)});
    }
  }
  validate_columns(pop, spec);
  return spec;
}

/// Tie-structure study: Models 1, 2, 5*, 3, 5, 8, 9 at H in {2, 3, 6}, once
/// with c = 1 and once with c = delta / H.
inline StudySpec study2_preset(const Population& pop, std::size_t replicates = 50000,
                               std::uint64_t seed = 20150101) {
  StudySpec spec;
  spec.replicates = replicates;
  spec.master_seed = seed;
  const std::size_t sizes[] = {2, 3, 6};
  const std::string_view models[] = {"Model 1", "Model 2", "Model 5*", "Model 3",
                                     "Model 5", "Model 8", "Model 9"};
  for (const char* group : {"no_ties", "ties"}) {
    const bool tied = std::string_view(group) == "ties";
    for (auto name : models) {
      for (auto h : sizes) {
        auto model = builtin_model(name);
        if (tied) model = with_tied_divisors(std::move(model), h);
        spec.configs.push_back({group, make_config(Design::pros_multi, std::move(model), h)});
      }
    }
  }
  validate_columns(pop, spec);
  return spec;
}

}  // namespace pros
