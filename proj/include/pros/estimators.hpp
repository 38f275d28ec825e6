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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pros/error.hpp"
#include "pros/sample.hpp"

namespace pros {

/// Weighted PROS estimate. Each response is prorated over the judgment
/// ranks by its weight vector; every rank column with positive total weight
/// contributes the weighted mean of its responses, and the column means are
/// averaged over the non-empty columns. Summation is column-major in
/// observation order.
inline double estimate_pros(const ReplicateSample& s) {
  const std::size_t h = s.set_size;
  if (s.size() == 0) throw DataError("empty sample");
  double total = 0, pooled_num = 0, common_den = -1;
  bool balanced = true;
  std::size_t used = 0;
  for (std::size_t col = 0; col < h; ++col) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double w = s.weights[i * h + col];
      den += w;
      num += w * static_cast<double>(s.y[i]);
    }
    if (den > 0) {
      total += num / den;
      pooled_num += num;
      if (common_den < 0) common_den = den;
      balanced = balanced && den == common_den && den == std::floor(den) &&
                 num == std::floor(num);
      ++used;
    }
  }
  if (used == 0) throw DataError("all weight columns are empty");
  // Equal integral column totals: the same average with a single rounding.
  if (balanced) return pooled_num / (common_den * static_cast<double>(used));
  return total / static_cast<double>(used);
}

/// Plain mean of the measured responses (RSS, logistic-RSS and SRS).
inline double estimate_rss(const ReplicateSample& s) {
  if (s.size() == 0) throw DataError("empty sample");
  std::size_t ones = 0;
  for (auto v : s.y) ones += v;
  return static_cast<double>(ones) / static_cast<double>(s.size());
}

inline double series_mean(std::span<const double> v) {
  if (v.empty()) throw DataError("empty estimate series");
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Sample SD of replicate estimates (divisor J - 1).
inline double series_sd(std::span<const double> v) {
  if (v.size() < 2) throw DataError("need at least 2 replicates for an SD");
  const double m = series_mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// SD of the SRS proportion without replacement, with the finite population
/// correction.
inline double srs_sd_analytic(double p, std::size_t population, std::size_t m) {
  if (!(p >= 0 && p <= 1)) throw ConfigError("proportion outside [0, 1]");
  if (population < 2 || m < 1 || m > population) {
    throw ConfigError("SRS size must satisfy 1 <= m <= N' and N' >= 2");
  }
  const double fpc = static_cast<double>(population - m) /
                     static_cast<double>(population - 1);
  return std::sqrt(fpc * p * (1 - p) / static_cast<double>(m));
}

/// Percent reduction of a candidate SD relative to a baseline SD; positive
/// when the candidate is smaller.
inline double sd_reduction(double candidate_sd, double baseline_sd) {
  if (!(baseline_sd > 0)) throw ConfigError("baseline SD must be positive");
  return (1.0 - candidate_sd / baseline_sd) * 100.0;
}

/// var_a / var_b. Read as N_b = RE * N_a for equal precision.
inline double relative_efficiency(double var_a, double var_b) {
  if (!(var_b > 0)) throw ConfigError("reference variance must be positive");
  return var_a / var_b;
}

/// Empirical quantile with linear interpolation between order statistics
/// at 1-based index (J - 1) q + 1. `sorted` must be ascending.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  const double pos = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

struct Interval {
  double lower = 0;
  double upper = 0;
  double length() const { return upper - lower; }
};

inline constexpr std::size_t kMinCiReplicates = 20;

/// Percentile interval: the empirical (1-coverage)/2 and (1+coverage)/2
/// quantiles of the replicate estimates.
inline Interval empirical_ci(std::span<const double> series,
                             double coverage = 0.90) {
  if (series.size() < kMinCiReplicates) {
    throw DataError("need at least 20 replicates for an empirical CI");
  }
  if (!(coverage > 0 && coverage < 1)) throw ConfigError("coverage outside (0, 1)");
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  return {quantile_sorted(sorted, (1 - coverage) / 2),
          quantile_sorted(sorted, (1 + coverage) / 2)};
}

struct StudyResult {
  double average = 0;
  double sd = 0;
  double sd_reduction_pct = 0;
  double ci_lower = 0;
  double ci_upper = 0;
  double ci_length = 0;
};

/// Monte Carlo summary of a replicate series against a baseline SD. CI
/// bounds are filled only when the series is long enough.
inline StudyResult summarize(std::span<const double> series, double baseline_sd) {
  StudyResult r;
  r.average = series_mean(series);
  r.sd = series_sd(series);
  r.sd_reduction_pct = sd_reduction(r.sd, baseline_sd);
  if (series.size() >= kMinCiReplicates) {
    const auto ci = empirical_ci(series);
    r.ci_lower = ci.lower;
    r.ci_upper = ci.upper;
    r.ci_length = ci.length();
  } else {
    r.ci_lower = r.ci_upper = NAN;
    r.ci_length = NAN;
  }
  return r;
}

}  // namespace pros
