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
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <boost/math/special_functions/gamma.hpp>

#include "pros/error.hpp"

namespace pros {

/// Row-major design matrix (without the intercept column) and binary labels.
struct TrainingSet {
  std::size_t dims = 0;
  std::vector<double> x;
  std::vector<std::uint8_t> y;

  std::size_t size() const { return y.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(x).subspan(i * dims, dims);
  }
  void add(std::span<const double> features, int label) {
    if (features.size() != dims) throw InternalError("feature width mismatch");
    x.insert(x.end(), features.begin(), features.end());
    y.push_back(static_cast<std::uint8_t>(label != 0));
  }
};

struct FitOptions {
  double ridge = 1e-6;  // L2 penalty on the slopes; the intercept is free
  int max_iter = 100;
  double tol = 1e-8;
};

struct LogisticFit {
  double intercept = 0;
  std::vector<double> slopes;
  bool converged = false;
  int iterations = 0;
  double log_likelihood = 0;       // unpenalized, at the estimate
  double null_log_likelihood = 0;  // intercept-only maximum

  LogisticFit negated() const {
    LogisticFit f = *this;
    f.intercept = -f.intercept;
    for (double& b : f.slopes) b = -b;
    return f;
  }
};

inline double linear_predictor(const LogisticFit& fit,
                               std::span<const double> x) {
  double eta = fit.intercept;
  for (std::size_t j = 0; j < fit.slopes.size(); ++j) eta += fit.slopes[j] * x[j];
  return eta;
}

inline double sigmoid(double eta) {
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

/// Fitted success probability.
inline double predict(const LogisticFit& fit, std::span<const double> x) {
  return sigmoid(linear_predictor(fit, x));
}

namespace detail {

// log(1 + exp(eta)) without overflow.
inline double softplus(double eta) {
  return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

inline double bernoulli_loglik(const TrainingSet& data, double intercept,
                               std::span<const double> slopes) {
  double ll = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double eta = intercept;
    const auto xi = data.row(i);
    for (std::size_t j = 0; j < slopes.size(); ++j) eta += slopes[j] * xi[j];
    ll += (data.y[i] ? eta : 0.0) - softplus(eta);
  }
  return ll;
}

}  // namespace detail

/// Ridge-penalized maximum likelihood by iteratively reweighted least
/// squares (Newton-Raphson with step halving). Objective:
///   l(b0, b) - ridge/2 * |b|^2.
/// Converges when the largest score component or the largest parameter step
/// falls below tol. Non-convergence is reported through `converged`.
inline LogisticFit fit(const TrainingSet& data, const FitOptions& opt = {}) {
  const std::size_t n = data.size();
  const std::size_t k = data.dims;
  const std::size_t p = k + 1;
  if (n < p + 1) throw DataError("training sample too small for the model");
  std::size_t positives = 0;
  for (auto v : data.y) positives += v;
  if (positives == 0 || positives == n) {
    throw DataError("training response is constant");
  }

  const double ybar = static_cast<double>(positives) / static_cast<double>(n);
  LogisticFit f;
  f.null_log_likelihood = static_cast<double>(n) *
                          (ybar * std::log(ybar) + (1 - ybar) * std::log1p(-ybar));
  f.intercept = std::log(ybar / (1 - ybar));
  f.slopes.assign(k, 0.0);

  auto objective = [&](double b0, std::span<const double> b) {
    double pen = 0;
    for (double v : b) pen += v * v;
    return detail::bernoulli_loglik(data, b0, b) - 0.5 * opt.ridge * pen;
  };

  std::vector<double> hess(p * p), score(p), trial(k);
  double current = objective(f.intercept, f.slopes);
  for (f.iterations = 0; f.iterations < opt.max_iter; ++f.iterations) {
    std::fill(hess.begin(), hess.end(), 0.0);
    std::fill(score.begin(), score.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto xi = data.row(i);
      const double mu = predict(f, xi);
      const double w = mu * (1 - mu);
      const double resid = static_cast<double>(data.y[i]) - mu;
      score[0] += resid;
      hess[0] += w;
      for (std::size_t a = 0; a < k; ++a) {
        score[a + 1] += resid * xi[a];
        hess[a + 1] += w * xi[a];
        for (std::size_t b = 0; b <= a; ++b) {
          hess[(a + 1) * p + b + 1] += w * xi[a] * xi[b];
        }
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      score[a + 1] -= opt.ridge * f.slopes[a];
      hess[(a + 1) * p + a + 1] += opt.ridge;
      hess[(a + 1) * p] = hess[a + 1];
    }
    for (std::size_t a = 1; a < p; ++a) {
      for (std::size_t b = a + 1; b < p; ++b) hess[a * p + b] = hess[b * p + a];
    }
    double max_score = 0;
    for (double s : score) max_score = std::max(max_score, std::abs(s));
    if (max_score < opt.tol) {
      f.converged = true;
      break;
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(
        Eigen::Map<const Eigen::MatrixXd>(hess.data(), Eigen::Index(p), Eigen::Index(p)));
    if (llt.info() != Eigen::Success) {
      throw DataError("singular weighted normal equations");
    }
    const Eigen::VectorXd step =
        llt.solve(Eigen::Map<const Eigen::VectorXd>(score.data(), Eigen::Index(p)));
    double scale = 1.0;
    double next = current;
    for (int halvings = 0; halvings < 40; ++halvings, scale *= 0.5) {
      for (std::size_t a = 0; a < k; ++a) trial[a] = f.slopes[a] + scale * step[a + 1];
      next = objective(f.intercept + scale * step[0], trial);
      if (next >= current - 1e-12 * std::abs(current)) break;
    }
    f.intercept += scale * step[0];
    f.slopes = trial;
    current = next;
    const double max_step = scale * step.cwiseAbs().maxCoeff();
    if (max_step < opt.tol) {
      f.converged = true;
      ++f.iterations;
      break;
    }
  }
  f.log_likelihood = detail::bernoulli_loglik(data, f.intercept, f.slopes);
  return f;
}

/// Upper tail P(X >= x) of a chi-square distribution with `df` degrees.
inline double chi_square_upper_tail(double x, int df) {
  if (df <= 0) return 1.0;
  if (x <= 0) return 1.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

struct LikelihoodRatio {
  double statistic = 0;
  int degrees = 0;
  double p_value = 1;
};

/// Whole-model test of the fit against the intercept-only null.
inline LikelihoodRatio likelihood_ratio_test(const LogisticFit& f) {
  double stat = 2.0 * (f.log_likelihood - f.null_log_likelihood);
  if (stat < -1e-8) {
    throw InternalError("fitted log-likelihood below the nested null");
  }
  stat = std::max(stat, 0.0);
  const int df = static_cast<int>(f.slopes.size());
  return {stat, df, chi_square_upper_tail(stat, df)};
}

}  // namespace pros
