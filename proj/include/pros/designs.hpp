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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pros/dataset.hpp"
#include "pros/error.hpp"
#include "pros/logistic.hpp"
#include "pros/random.hpp"
#include "pros/ranking.hpp"
#include "pros/sample.hpp"

namespace pros {

enum class Design { srs, rss_one_concomitant, pros_multi, rss_logistic };

inline std::string_view design_name(Design d) {
  switch (d) {
    case Design::srs: return "srs";
    case Design::rss_one_concomitant: return "rss";
    case Design::pros_multi: return "pros";
    case Design::rss_logistic: return "logistic";
  }
  return "?";
}

inline Design parse_design(std::string_view s) {
  if (s == "srs") return Design::srs;
  if (s == "rss") return Design::rss_one_concomitant;
  if (s == "pros") return Design::pros_multi;
  if (s == "logistic") return Design::rss_logistic;
  throw ConfigError("unknown design '" + std::string(s) + "'");
}

struct ModelConcomitant {
  std::string name;
  TieStructure tie;
};

struct RankingModel {
  std::string name;
  std::vector<ModelConcomitant> concomitants;
  // Overrides the |rho|-proportional weights when present.
  std::optional<std::vector<double>> explicit_alpha;
};

struct DesignConfig {
  Design design = Design::pros_multi;
  std::size_t set_size = 1;  // H
  std::size_t cycles = 1;    // n
  RankingModel model;
  std::size_t training_size = 100;
  bool fixed_training = false;  // one training sample for every replicate

  std::size_t sample_size() const { return set_size * cycles; }
};

/// A ranking model resolved against a population: column indices, ranking
/// direction and alpha weights, computed once per configuration.
struct PreparedModel {
  std::vector<std::size_t> columns;
  std::vector<TieStructure> ties;
  std::vector<char> reverse;  // rank descending when rho < 0
  std::vector<double> rho;
  AlphaWeights alpha;
};

inline PreparedModel prepare_model(const Population& pop,
                                   const RankingModel& model) {
  if (model.concomitants.empty()) {
    throw ConfigError("model '" + model.name + "' has no concomitants");
  }
  PreparedModel m;
  std::vector<std::pair<std::string, double>> rhos;
  for (const auto& c : model.concomitants) {
    const auto col = pop.column_index(c.name);
    if (!(c.tie.c >= 1.0)) throw ConfigError("tie divisor c must be >= 1");
    const double rho = correlation(pop, pop.column(col).name);
    m.columns.push_back(col);
    m.ties.push_back(c.tie);
    m.reverse.push_back(rho < 0 ? 1 : 0);
    m.rho.push_back(rho);
    rhos.emplace_back(pop.column(col).name, rho);
  }
  if (model.explicit_alpha) {
    std::vector<std::string> names;
    for (const auto& [n, r] : rhos) names.push_back(n);
    m.alpha = AlphaWeights::explicit_weights(std::move(names), *model.explicit_alpha);
  } else {
    m.alpha = alpha_weights(rhos);
  }
  return m;
}

/// Reusable scratch buffers for drawing ranked sets.
struct DrawWorkspace {
  std::vector<std::size_t> set;
  std::vector<double> raw;
  std::vector<double> disc;
  std::vector<double> keys;
  std::vector<std::size_t> order;
  std::vector<std::size_t> first;
  std::vector<std::size_t> width;
  std::vector<std::size_t> candidates;
  StrengthMatrix dbar;

  void resize(std::size_t h) {
    raw.resize(h);
    disc.resize(h);
    keys.resize(h);
    order.resize(h);
    first.resize(h);
    width.resize(h);
  }
};

/// Simple random sample of m distinct records.
template <class Rng>
void draw_srs(const Population& pop, std::size_t m, Rng& rng,
              DrawWorkspace& ws, ReplicateSample& out) {
  if (m > pop.size()) throw ConfigError("SRS size exceeds the population");
  sample_without_replacement(rng, pop.size(), m, ws.set);
  out.reset(1, m);
  for (std::size_t rec : ws.set) out.add_unit(pop.response(rec), 0, rec);
}

template <class Rng>
ReplicateSample draw_srs(const Population& pop, std::size_t m, Rng& rng) {
  DrawWorkspace ws;
  ReplicateSample s;
  draw_srs(pop, m, rng, ws, s);
  return s;
}

namespace detail {

inline void check_set_size(const Population& pop, const DesignConfig& cfg) {
  if (cfg.set_size < 1 || cfg.cycles < 1) {
    throw ConfigError("set size and cycle count must be positive");
  }
  if (cfg.set_size > pop.size()) {
    throw ConfigError("set size exceeds the population");
  }
}

// Index of the unit at position r after ordering the set by `keys`, ties
// broken uniformly at random.
template <class Rng>
std::size_t pick_unique_rank(std::span<const double> keys, bool reverse,
                             std::size_t r, Rng& rng,
                             std::vector<std::size_t>& order) {
  const std::size_t h = keys.size();
  order.resize(h);
  for (std::size_t i = 0; i < h; ++i) order[i] = i;
  shuffle(rng, std::span<std::size_t>(order));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return reverse ? keys[a] > keys[b] : keys[a] < keys[b];
  });
  return order[r];
}

}  // namespace detail

/// Multi-concomitant PROS sample: for each target rank r and cycle, a fresh
/// set of H records is ranked by every concomitant (with ties), the
/// strength matrices are averaged with alpha, and the selected unit is
/// measured together with its row of the averaged matrix.
template <class Rng>
void draw_pros(const Population& pop, const DesignConfig& cfg,
               const PreparedModel& model, Rng& rng, DrawWorkspace& ws,
               ReplicateSample& out) {
  detail::check_set_size(pop, cfg);
  const std::size_t h = cfg.set_size;
  ws.resize(h);
  out.reset(h, cfg.sample_size());
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t i = 0; i < cfg.cycles; ++i) {
      sample_without_replacement(rng, pop.size(), h, ws.set);
      ws.dbar.resize(h);
      for (std::size_t k = 0; k < model.columns.size(); ++k) {
        const auto col = pop.values(model.columns[k]);
        for (std::size_t u = 0; u < h; ++u) ws.raw[u] = col[ws.set[u]];
        discretize(ws.raw, model.ties[k], ws.disc);
        detail::tie_blocks(ws.disc, model.reverse[k] != 0, ws.order, ws.first,
                           ws.width);
        const double a = model.alpha.weights[k];
        for (std::size_t u = 0; u < h; ++u) {
          const double w = 1.0 / static_cast<double>(ws.width[u]);
          for (std::size_t p = ws.first[u]; p < ws.first[u] + ws.width[u]; ++p) {
            ws.dbar(u, p) += a * w;
          }
        }
      }
      const auto u = detail::select_row(ws.dbar, r, rng, ws.candidates);
      out.add(pop.response(ws.set[u]), r, ws.set[u], ws.dbar.row(u));
    }
  }
}

template <class Rng>
ReplicateSample draw_pros(const Population& pop, const DesignConfig& cfg,
                          const PreparedModel& model, Rng& rng) {
  DrawWorkspace ws;
  ReplicateSample s;
  draw_pros(pop, cfg, model, rng, ws, s);
  return s;
}

/// Classical RSS ranked by a single raw concomitant; ties are broken at
/// random into unique ranks.
template <class Rng>
void draw_rss_one(const Population& pop, const DesignConfig& cfg,
                  const PreparedModel& model, Rng& rng, DrawWorkspace& ws,
                  ReplicateSample& out) {
  if (model.columns.size() != 1) {
    throw ConfigError("one-concomitant RSS needs exactly one concomitant");
  }
  detail::check_set_size(pop, cfg);
  const std::size_t h = cfg.set_size;
  ws.resize(h);
  out.reset(h, cfg.sample_size());
  const auto col = pop.values(model.columns[0]);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t i = 0; i < cfg.cycles; ++i) {
      sample_without_replacement(rng, pop.size(), h, ws.set);
      for (std::size_t u = 0; u < h; ++u) ws.keys[u] = col[ws.set[u]];
      const auto u =
          detail::pick_unique_rank(ws.keys, model.reverse[0] != 0, r, rng, ws.order);
      out.add_unit(pop.response(ws.set[u]), r, ws.set[u]);
    }
  }
}

template <class Rng>
ReplicateSample draw_rss_one(const Population& pop, const DesignConfig& cfg,
                             const PreparedModel& model, Rng& rng) {
  DrawWorkspace ws;
  ReplicateSample s;
  draw_rss_one(pop, cfg, model, rng, ws, s);
  return s;
}

/// Training rows for the logistic ranker: `size` distinct records with the
/// model's raw concomitant values.
template <class Rng>
TrainingSet draw_training(const Population& pop, const PreparedModel& model,
                          std::size_t size, Rng& rng) {
  if (size > pop.size()) throw ConfigError("training size exceeds the population");
  std::vector<std::size_t> idx;
  sample_without_replacement(rng, pop.size(), size, idx);
  TrainingSet t;
  t.dims = model.columns.size();
  std::vector<double> row(t.dims);
  for (std::size_t rec : idx) {
    for (std::size_t k = 0; k < t.dims; ++k) {
      row[k] = pop.values(model.columns[k])[rec];
    }
    t.add(row, pop.response(rec));
  }
  return t;
}

/// RSS ranked by fitted success probabilities. Units are ordered by the
/// linear predictor, which induces the same order as the probabilities.
template <class Rng>
void draw_rss_logistic(const Population& pop, const DesignConfig& cfg,
                       const PreparedModel& model, const LogisticFit& fitted,
                       Rng& rng, DrawWorkspace& ws, ReplicateSample& out) {
  if (!fitted.converged) throw DataError("logistic fit not converged");
  if (fitted.slopes.size() != model.columns.size()) {
    throw ConfigError("logistic fit does not match the model's concomitants");
  }
  detail::check_set_size(pop, cfg);
  const std::size_t h = cfg.set_size;
  const std::size_t k = model.columns.size();
  ws.resize(h);
  ws.raw.resize(k);
  out.reset(h, cfg.sample_size());
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t i = 0; i < cfg.cycles; ++i) {
      sample_without_replacement(rng, pop.size(), h, ws.set);
      for (std::size_t u = 0; u < h; ++u) {
        for (std::size_t j = 0; j < k; ++j) {
          ws.raw[j] = pop.values(model.columns[j])[ws.set[u]];
        }
        ws.keys[u] = linear_predictor(fitted, ws.raw);
      }
      const auto u = detail::pick_unique_rank(ws.keys, false, r, rng, ws.order);
      out.add_unit(pop.response(ws.set[u]), r, ws.set[u]);
    }
  }
}

template <class Rng>
ReplicateSample draw_rss_logistic(const Population& pop, const DesignConfig& cfg,
                                  const PreparedModel& model,
                                  const LogisticFit& fitted, Rng& rng) {
  DrawWorkspace ws;
  ReplicateSample s;
  draw_rss_logistic(pop, cfg, model, fitted, rng, ws, s);
  return s;
}

}  // namespace pros
