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

// CSV rendering of study results and the summary checks printed after a
// study run.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pros/designs.hpp"
#include "pros/estimators.hpp"
#include "pros/harness.hpp"

namespace pros {

inline constexpr std::string_view kCsvHeader =
    "design,model,H,n,c,replicates,average,sd,sd_reduction_pct,ci_lower,ci_upper,"
    "ci_length,seed";

/// Four decimals, the precision of the published tables. NaN prints as NA.
inline std::string fixed4(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

/// Shortest decimal text that reads back to the same double.
inline std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// Per-concomitant tie divisors joined by ';', or "-" when the design does
/// not rank.
inline std::string c_spec(const DesignConfig& cfg) {
  if (cfg.design == Design::srs || cfg.model.concomitants.empty()) return "-";
  std::string out;
  for (const auto& c : cfg.model.concomitants) {
    if (!out.empty()) out += ';';
    out += shortest(c.tie.enabled ? c.tie.c : 1.0);
  }
  return out;
}

inline std::string csv_row(const DesignConfig& cfg, const StudyResult& r,
                           std::size_t replicates, std::uint64_t seed) {
  std::string row;
  row += design_name(cfg.design);
  row += ',';
  row += cfg.design == Design::srs ? std::string("-") : cfg.model.name;
  row += ',' + std::to_string(cfg.set_size);
  row += ',' + std::to_string(cfg.cycles);
  row += ',' + c_spec(cfg);
  row += ',' + std::to_string(replicates);
  for (double v : {r.average, r.sd, r.sd_reduction_pct, r.ci_lower, r.ci_upper,
                   r.ci_length}) {
    row += ',' + fixed4(v);
  }
  row += ',' + std::to_string(seed);
  return row;
}

/// Writes the header and one row per configuration whose group matches
/// `group` (every configuration when `group` is empty).
inline void write_csv(std::ostream& os, const StudySpec& spec,
                      const std::vector<StudyResult>& results,
                      std::string_view group = {}) {
  os << kCsvHeader << '\n';
  for (std::size_t i = 0; i < spec.configs.size(); ++i) {
    if (!group.empty() && spec.configs[i].group != group) continue;
    os << csv_row(spec.configs[i].design, results[i], spec.replicates,
                  spec.master_seed)
       << '\n';
  }
}

inline std::optional<std::size_t> find_config(const StudySpec& spec,
                                              std::string_view group, Design d,
                                              std::string_view model,
                                              std::size_t h) {
  for (std::size_t i = 0; i < spec.configs.size(); ++i) {
    const auto& c = spec.configs[i];
    if (c.group == group && c.design.design == d && c.design.set_size == h &&
        c.design.model.name == model) {
      return i;
    }
  }
  return std::nullopt;
}

struct PropertyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Monte Carlo standard error of a replicate SD.
inline double sd_standard_error(double sd, std::size_t replicates) {
  return sd / std::sqrt(2.0 * static_cast<double>(replicates - 1));
}

/// Approximate Monte Carlo standard error of a 90% percentile-interval
/// length under a normal sampling distribution.
inline double ci_length_standard_error(double sd, std::size_t replicates) {
  constexpr double density = 0.10313564037537128;  // standard normal at z_0.95
  const double q_se = std::sqrt(0.05 * 0.95 / static_cast<double>(replicates)) /
                      (density / sd);
  return std::sqrt(2.0) * q_se;
}

/// SD reduction strictly increasing in H for the given PROS models.
inline PropertyCheck check_monotone_in_h(const StudySpec& spec,
                                         const std::vector<StudyResult>& res,
                                         std::string_view group,
                                         const std::vector<std::string>& models,
                                         const std::vector<std::size_t>& sizes) {
  PropertyCheck chk{"SD reduction increasing in H", true, {}};
  for (const auto& m : models) {
    std::optional<double> prev;
    for (auto h : sizes) {
      auto i = find_config(spec, group, Design::pros_multi, m, h);
      if (!i) {
        chk.passed = false;
        chk.detail += m + " H=" + std::to_string(h) + " missing; ";
        continue;
      }
      const double v = res[*i].sd_reduction_pct;
      chk.detail += m + " H=" + std::to_string(h) + ":" + fixed4(v) + " ";
      if (prev && !(v > *prev)) chk.passed = false;
      prev = v;
    }
    chk.detail += "; ";
  }
  return chk;
}

/// SD of `better` below SD of `worse` by at least `k` combined standard
/// errors at every H.
inline PropertyCheck check_dominance(const StudySpec& spec,
                                     const std::vector<StudyResult>& res,
                                     std::string_view group, const std::string& better,
                                     const std::string& worse,
                                     const std::vector<std::size_t>& sizes,
                                     double k = 3.0) {
  PropertyCheck chk{better + " SD below " + worse + " SD", true, {}};
  for (auto h : sizes) {
    auto a = find_config(spec, group, Design::pros_multi, better, h);
    auto b = find_config(spec, group, Design::pros_multi, worse, h);
    if (!a || !b) {
      chk.passed = false;
      continue;
    }
    const double se = std::hypot(sd_standard_error(res[*a].sd, spec.replicates),
                                 sd_standard_error(res[*b].sd, spec.replicates));
    const double gap = res[*b].sd - res[*a].sd;
    chk.detail += "H=" + std::to_string(h) + " gap=" + fixed4(gap) +
                  " (" + fixed4(gap / se) + " SE) ";
    if (gap < k * se) chk.passed = false;
  }
  return chk;
}

/// CI length strictly decreasing in H for a model within a group.
inline PropertyCheck check_ci_decreasing(const StudySpec& spec,
                                         const std::vector<StudyResult>& res,
                                         std::string_view group, const std::string& model,
                                         const std::vector<std::size_t>& sizes) {
  PropertyCheck chk{model + " CI length decreasing in H (" + std::string(group) + ")",
                    true, {}};
  std::optional<double> prev;
  for (auto h : sizes) {
    auto i = find_config(spec, group, Design::pros_multi, model, h);
    if (!i) {
      chk.passed = false;
      continue;
    }
    const double len = res[*i].ci_length;
    chk.detail += "H=" + std::to_string(h) + ":" + fixed4(len) + " ";
    if (prev && !(len < *prev)) chk.passed = false;
    prev = len;
  }
  return chk;
}

/// Induced ties do not lengthen the CI beyond `k` standard errors of the
/// difference of two independent interval lengths.
inline PropertyCheck check_ties_not_worse(const StudySpec& spec,
                                          const std::vector<StudyResult>& res,
                                          const std::string& model, std::size_t h,
                                          double k = 3.0) {
  PropertyCheck chk{model + " tied CI not longer at H=" + std::to_string(h), false, {}};
  auto plain = find_config(spec, "no_ties", Design::pros_multi, model, h);
  auto tied = find_config(spec, "ties", Design::pros_multi, model, h);
  if (!plain || !tied) return chk;
  const double se = std::hypot(ci_length_standard_error(res[*plain].sd, spec.replicates),
                               ci_length_standard_error(res[*tied].sd, spec.replicates));
  const double diff = res[*tied].ci_length - res[*plain].ci_length;
  chk.passed = diff <= k * se;
  chk.detail = "tied " + fixed4(res[*tied].ci_length) + " vs c=1 " +
               fixed4(res[*plain].ci_length) + " (tolerance " + fixed4(k * se) + ")";
  return chk;
}

}  // namespace pros
