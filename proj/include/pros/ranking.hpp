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

// Judgment ranking with declared ties: discretization of concomitant values,
// tied rank assignments, strength-of-weight matrices and their weighted
// average, and selection of the unit to measure for a target rank.
//
// Units, positions and ranks are 0-based throughout: the unit holding the
// r-th smallest judgment rank sits at position r - 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pros/error.hpp"
#include "pros/random.hpp"

namespace pros {

/// Tie-inducing discretization round(x / c). c = 1 induces no ties beyond
/// equal raw values, and a disabled structure behaves the same way.
struct TieStructure {
  double c = 1.0;
  bool enabled = true;
};

inline void discretize(std::span<const double> values, TieStructure tie,
                       std::span<double> out) {
  if (!(tie.c >= 1.0) || !std::isfinite(tie.c)) {
    throw ConfigError("tie divisor c must be >= 1");
  }
  for (std::size_t h = 0; h < values.size(); ++h) {
    if (!std::isfinite(values[h])) throw DataError("non-finite concomitant value");
    out[h] = tie.enabled && tie.c != 1.0 ? std::round(values[h] / tie.c) : values[h];
  }
}

inline std::vector<double> discretize(std::span<const double> values,
                                      TieStructure tie) {
  std::vector<double> out(values.size());
  discretize(values, tie, out);
  return out;
}

/// Partition of a set's units into ordered groups of equal judged value.
/// A group of size m holds m consecutive positions; earlier groups hold
/// smaller positions.
struct RankAssignment {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> first;  // per unit: first position of its group
  std::vector<std::size_t> width;  // per unit: size of its group

  std::size_t size() const { return first.size(); }

  std::vector<std::size_t> positions(std::size_t unit) const {
    std::vector<std::size_t> p(width[unit]);
    std::iota(p.begin(), p.end(), first[unit]);
    return p;
  }
};

namespace detail {

// Fills first/width for units ordered by (possibly negated) value.
// `order` is scratch of size H.
inline void tie_blocks(std::span<const double> values, bool reverse,
                       std::span<std::size_t> order,
                       std::span<std::size_t> first,
                       std::span<std::size_t> width) {
  const std::size_t n = values.size();
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t u) { return reverse ? -values[u] : values[u]; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ka = key(a), kb = key(b);
    return ka < kb || (ka == kb && a < b);
  });
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    for (std::size_t i = start; i < end; ++i) {
      first[order[i]] = start;
      width[order[i]] = end - start;
    }
    start = end;
  }
}

}  // namespace detail

/// Groups equal values into tied blocks, ascending by value or descending
/// when `reverse` is set (concomitants negatively correlated with the
/// response). Units in a block share every position of the block.
inline RankAssignment rank_with_ties(std::span<const double> values,
                                     bool reverse = false) {
  const std::size_t n = values.size();
  RankAssignment a;
  a.first.resize(n);
  a.width.resize(n);
  std::vector<std::size_t> order(n);
  detail::tie_blocks(values, reverse, order, a.first, a.width);
  for (std::size_t i = 0; i < n;) {
    const std::size_t w = a.width[order[i]];
    a.groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                          order.begin() + static_cast<std::ptrdiff_t>(i + w));
    i += w;
  }
  return a;
}

/// Square H x H matrix, row-major. Rows are units, columns judgment ranks.
class StrengthMatrix {
 public:
  StrengthMatrix() = default;
  explicit StrengthMatrix(std::size_t h) : h_(h), data_(h * h, 0.0) {}
  StrengthMatrix(std::size_t h, std::vector<double> data)
      : h_(h), data_(std::move(data)) {
    if (data_.size() != h * h) throw InternalError("matrix data size");
  }

  std::size_t size() const { return h_; }
  double operator()(std::size_t row, std::size_t col) const {
    return data_[row * h_ + col];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return data_[row * h_ + col];
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * h_, h_);
  }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  void resize(std::size_t h) {
    h_ = h;
    data_.assign(h * h, 0.0);
  }

  bool is_row_stochastic(double tol = 1e-12) const {
    for (std::size_t r = 0; r < h_; ++r) {
      double s = 0;
      for (double v : row(r)) {
        if (v < -tol) return false;
        s += v;
      }
      if (std::abs(s - 1.0) > tol) return false;
    }
    return true;
  }

  bool is_doubly_stochastic(double tol = 1e-12) const {
    if (!is_row_stochastic(tol)) return false;
    for (std::size_t c = 0; c < h_; ++c) {
      double s = 0;
      for (std::size_t r = 0; r < h_; ++r) s += (*this)(r, c);
      if (std::abs(s - 1.0) > tol) return false;
    }
    return true;
  }

 private:
  std::size_t h_ = 0;
  std::vector<double> data_;
};

namespace detail {

inline void fill_strength(std::span<const std::size_t> first,
                          std::span<const std::size_t> width,
                          StrengthMatrix& out) {
  const std::size_t h = first.size();
  out.resize(h);
  for (std::size_t u = 0; u < h; ++u) {
    const double w = 1.0 / static_cast<double>(width[u]);
    for (std::size_t p = first[u]; p < first[u] + width[u]; ++p) out(u, p) = w;
  }
}

}  // namespace detail

/// Row u carries 1/m at each of unit u's m tied positions.
inline StrengthMatrix strength_matrix(const RankAssignment& a) {
  StrengthMatrix d;
  detail::fill_strength(a.first, a.width, d);
  return d;
}

/// Per-concomitant weights alpha_k, non-negative and summing to one.
struct AlphaWeights {
  std::vector<std::string> names;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }

  /// Validates an explicitly supplied vector.
  static AlphaWeights explicit_weights(std::vector<std::string> names,
                                       std::vector<double> weights) {
    if (names.size() != weights.size()) {
      throw ConfigError("alpha count does not match concomitant count");
    }
    double s = 0;
    for (double w : weights) {
      if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("alpha outside [0, 1]");
      s += w;
    }
    if (std::abs(s - 1.0) > 1e-9) throw ConfigError("alpha weights must sum to 1");
    return {std::move(names), std::move(weights)};
  }
};

/// alpha_k = |rho_k| / sum_j |rho_j|.
inline AlphaWeights alpha_weights(
    const std::vector<std::pair<std::string, double>>& rhos) {
  double total = 0;
  for (const auto& [name, rho] : rhos) total += std::abs(rho);
  if (!(total > 0)) throw DataError("no ranking information");
  AlphaWeights a;
  for (const auto& [name, rho] : rhos) {
    a.names.push_back(name);
    a.weights.push_back(std::abs(rho) / total);
  }
  return a;
}

/// Dbar = sum_k alpha_k D_k.
inline StrengthMatrix averaged_matrix(std::span<const StrengthMatrix> mats,
                                      std::span<const double> alphas) {
  if (mats.empty() || mats.size() != alphas.size()) {
    throw ConfigError("averaged_matrix: need one alpha per matrix");
  }
  const std::size_t h = mats.front().size();
  StrengthMatrix out(h);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].size() != h) throw ConfigError("averaged_matrix: dimension mismatch");
    auto src = mats[k].data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += alphas[k] * src[i];
  }
  return out;
}

inline StrengthMatrix averaged_matrix(std::span<const StrengthMatrix> mats,
                                      const AlphaWeights& alphas) {
  return averaged_matrix(mats, std::span<const double>(alphas.weights));
}

/// gamma = sum_t (t - r)^2 w[t]. Small values mean the weight vector is
/// concentrated at rank r.
inline double concentration(std::span<const double> weights, std::size_t r) {
  double g = 0;
  for (std::size_t t = 0; t < weights.size(); ++t) {
    const double d = static_cast<double>(t) - static_cast<double>(r);
    g += d * d * weights[t];
  }
  return g;
}

/// Two weights closer than this are treated as equal when choosing a unit.
inline constexpr double kTieTolerance = 1e-9;

struct Selection {
  std::size_t unit = 0;
  std::vector<double> weights;  // row `unit` of the averaged matrix
};

namespace detail {

// Maximizes column r, then minimizes concentration, then draws uniformly.
// `candidates` is scratch. The rng is consulted only for a residual tie.
template <class Rng>
std::size_t select_row(const StrengthMatrix& dbar, std::size_t r, Rng& rng,
                       std::vector<std::size_t>& candidates) {
  const std::size_t h = dbar.size();
  double best = -1.0;
  for (std::size_t u = 0; u < h; ++u) best = std::max(best, dbar(u, r));
  candidates.clear();
  for (std::size_t u = 0; u < h; ++u) {
    if (dbar(u, r) >= best - kTieTolerance) candidates.push_back(u);
  }
  if (candidates.size() > 1) {
    double best_gamma = INFINITY;
    for (auto u : candidates) best_gamma = std::min(best_gamma, concentration(dbar.row(u), r));
    std::erase_if(candidates, [&](std::size_t u) {
      return concentration(dbar.row(u), r) > best_gamma + kTieTolerance;
    });
  }
  if (candidates.size() == 1) return candidates.front();
  return candidates[static_cast<std::size_t>(
      uniform_index(rng, candidates.size()))];
}

}  // namespace detail

/// Chooses the unit to measure for target rank r from an averaged matrix.
template <class Rng>
Selection select_unit(const StrengthMatrix& dbar, std::size_t r, Rng& rng) {
  if (r >= dbar.size()) throw ConfigError("target rank outside the set");
  std::vector<std::size_t> scratch;
  const std::size_t u = detail::select_row(dbar, r, rng, scratch);
  const auto row = dbar.row(u);
  return {u, std::vector<double>(row.begin(), row.end())};
}

}  // namespace pros
