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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "support.hpp"

namespace pros {
namespace {

using testing::wbcd;

Population example_population() {
  const WorkedExample ex;
  std::vector<Population::Column> cols;
  for (std::size_t k = 0; k < ex.concomitants.size(); ++k) {
    cols.push_back({ex.concomitants[k], ex.values[k], k > 0});
  }
  return Population("y", {ex.subject_ids.begin(), ex.subject_ids.end()}, {0, 0, 0, 1, 1},
                    cols);
}

// Binary response with a concomitant that orders units by response and
// breaks the remaining ties by a distinct fractional part.
Population perfect_population(std::size_t n, std::uint64_t seed) {
  StreamRng rng(seed);
  std::vector<std::int64_t> ids;
  std::vector<std::uint8_t> y;
  std::vector<double> x;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(static_cast<std::int64_t>(i));
    y.push_back(uniform01(rng) < 0.3);
    x.push_back(y.back() + 0.5 * static_cast<double>(i) / static_cast<double>(n));
  }
  return Population("y", ids, y, {{"x", x, false}});
}

DesignConfig config(Design d, RankingModel model, std::size_t h, std::size_t n) {
  DesignConfig c;
  c.design = d;
  c.set_size = h;
  c.cycles = n;
  c.model = std::move(model);
  return c;
}

void expect_stochastic(const ReplicateSample& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    double total = 0;
    for (double w : s.weight_vector(i)) {
      ASSERT_GE(w, 0.0);
      total += w;
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(DrawSrs, CensusRecoversTheProportion) {
  StreamRng rng(1);
  const auto s = draw_srs(wbcd(), wbcd().size(), rng);
  EXPECT_DOUBLE_EQ(estimate_rss(s), population_proportion(wbcd()));
}

TEST(DrawSrs, DistinctAndReproducible) {
  StreamRng a(2), b(2);
  const auto s = draw_srs(wbcd(), 54, a);
  const auto t = draw_srs(wbcd(), 54, b);
  EXPECT_EQ(s.record, t.record);
  std::set<std::int64_t> ids;
  for (auto rec : s.record) ids.insert(wbcd().ids()[rec]);
  EXPECT_EQ(s.record.size(), 54u);
  EXPECT_EQ(std::set<std::size_t>(s.record.begin(), s.record.end()).size(), 54u);
  EXPECT_THROW(draw_srs(wbcd(), wbcd().size() + 1, a), ConfigError);
}

TEST(DrawPros, ReproducesTheWorkedExampleObservation) {
  const auto pop = example_population();
  const WorkedExample ex;
  RankingModel model{"example", {}, ex.alpha};
  for (std::size_t k = 0; k < ex.concomitants.size(); ++k) {
    model.concomitants.push_back({ex.concomitants[k], ex.ties[k]});
  }
  const auto prepared = prepare_model(pop, model);
  ASSERT_EQ(std::count(prepared.reverse.begin(), prepared.reverse.end(), 1), 0);
  StreamRng rng(3);
  const auto s = draw_pros(pop, config(Design::pros_multi, model, 5, 1), prepared, rng);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s.rank[1], 1u);
  EXPECT_EQ(s.record[1], 0u);
  const double omega[] = {0.4766, 0.4766, 0.0468, 0, 0};
  for (std::size_t t = 0; t < 5; ++t) EXPECT_NEAR(s.weight_vector(1)[t], omega[t], 5e-5);
}

TEST(DrawPros, DistinctSingleConcomitantIsClassicalRss) {
  const auto pop = perfect_population(200, 4);
  const auto model = single_concomitant("x");
  const auto prepared = prepare_model(pop, model);
  StreamRng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = draw_pros(pop, config(Design::pros_multi, model, 4, 3), prepared, rng);
    ASSERT_EQ(s.size(), 12u);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto w = s.weight_vector(i);
      ASSERT_EQ(w[s.rank[i]], 1.0);
    }
    ASSERT_EQ(estimate_pros(s), estimate_rss(s));
  }
}

TEST(DrawPros, SetSizeOneIsSimpleRandomSampling) {
  const auto model = builtin_model("Model 5");
  const auto prepared = prepare_model(wbcd(), model);
  StreamRng rng(6);
  double total = 0;
  constexpr int kReps = 4000;
  for (int rep = 0; rep < kReps; ++rep) {
    const auto s = draw_pros(wbcd(), config(Design::pros_multi, model, 1, 54), prepared, rng);
    ASSERT_EQ(s.size(), 54u);
    for (std::size_t i = 0; i < s.size(); ++i) ASSERT_EQ(s.weight_vector(i)[0], 1.0);
    total += estimate_pros(s);
  }
  const double p = population_proportion(wbcd());
  EXPECT_NEAR(total / kReps, p, 3 * std::sqrt(p * (1 - p) / 54 / kReps));
}

TEST(DrawPros, TotalTieGivesUniformRowsAndSelection) {
  const auto pop = perfect_population(60, 7);
  const auto model = single_concomitant("x", 1000.0);
  const auto prepared = prepare_model(pop, model);
  StreamRng rng(8);
  std::vector<int> hits(pop.size(), 0);
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = draw_pros(pop, config(Design::pros_multi, model, 3, 10), prepared, rng);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (double w : s.weight_vector(i)) ASSERT_NEAR(w, 1.0 / 3, 1e-15);
      ++hits[s.record[i]];
    }
  }
  // 6000 picks over 60 records: every record is chosen.
  EXPECT_EQ(std::count(hits.begin(), hits.end(), 0), 0);
}

TEST(Designs, ShapeAndReproducibility) {
  const auto& pop = testing::wbcd_with_covariate();
  const auto m5 = builtin_model("Model 5");
  const auto one = single_concomitant(wbcd::kCellSize);
  const auto p5 = prepare_model(pop, m5);
  const auto p1 = prepare_model(pop, one);
  for (std::size_t h : {2u, 3u, 6u, 9u}) {
    const std::size_t n = 54 / h;
    StreamRng a(h), b(h);
    const auto s = draw_pros(pop, config(Design::pros_multi, m5, h, n), p5, a);
    const auto t = draw_pros(pop, config(Design::pros_multi, m5, h, n), p5, b);
    EXPECT_EQ(s.size(), 54u);
    EXPECT_EQ(s.record, t.record);
    EXPECT_EQ(s.weights, t.weights);
    expect_stochastic(s);

    StreamRng c(h), d(h);
    const auto u = draw_rss_one(pop, config(Design::rss_one_concomitant, one, h, n), p1, c);
    const auto v = draw_rss_one(pop, config(Design::rss_one_concomitant, one, h, n), p1, d);
    EXPECT_EQ(u.size(), 54u);
    EXPECT_EQ(u.record, v.record);
    expect_stochastic(u);
  }
  StreamRng rng(1);
  EXPECT_THROW(draw_rss_one(pop, config(Design::rss_one_concomitant, m5, 3, 18), p5, rng),
               ConfigError);
  EXPECT_THROW(draw_pros(pop, config(Design::pros_multi, m5, 700, 1), p5, rng), ConfigError);
}

TEST(DrawRssOne, PerfectRankerMeasuresTrueOrderStatistics) {
  const auto pop = perfect_population(500, 9);
  const auto model = single_concomitant("x");
  const auto prepared = prepare_model(pop, model);
  StreamRng rng(10);
  const double p = population_proportion(pop);
  double low = 0, high = 0;
  constexpr int kReps = 3000;
  for (int rep = 0; rep < kReps; ++rep) {
    const auto s =
        draw_rss_one(pop, config(Design::rss_one_concomitant, model, 2, 1), prepared, rng);
    low += s.y[0];
    high += s.y[1];
  }
  // Minimum and maximum of two draws without replacement from N records.
  const double n = static_cast<double>(pop.size()), k = p * n;
  const double both = k * (k - 1) / (n * (n - 1));
  const double none = (n - k) * (n - k - 1) / (n * (n - 1));
  EXPECT_NEAR(low / kReps, both, 0.03);
  EXPECT_NEAR(high / kReps, 1 - none, 0.03);
}

TEST(DrawRssLogistic, FlatFitRanksAtRandom) {
  const auto& pop = wbcd();
  const auto model = builtin_model("Model 1");
  const auto prepared = prepare_model(pop, model);
  LogisticFit flat;
  flat.converged = true;
  flat.slopes = {0.0};
  StreamRng rng(11);
  std::vector<double> by_rank(3, 0);
  constexpr int kReps = 3000;
  for (int rep = 0; rep < kReps; ++rep) {
    const auto s =
        draw_rss_logistic(pop, config(Design::rss_logistic, model, 3, 1), prepared, flat, rng);
    for (std::size_t i = 0; i < 3; ++i) by_rank[s.rank[i]] += s.y[i];
  }
  const double p = population_proportion(pop);
  const double tol = 4 * std::sqrt(p * (1 - p) / kReps);
  for (double v : by_rank) EXPECT_NEAR(v / kReps, p, tol);
}

TEST(DrawRssLogistic, SeparatingFitRanksByClass) {
  const auto pop = perfect_population(500, 12);
  const auto model = single_concomitant("x");
  const auto prepared = prepare_model(pop, model);
  LogisticFit sep;
  sep.converged = true;
  sep.intercept = -50;
  sep.slopes = {100.0};
  StreamRng rng(13);
  double low = 0, high = 0;
  constexpr int kReps = 3000;
  for (int rep = 0; rep < kReps; ++rep) {
    const auto s =
        draw_rss_logistic(pop, config(Design::rss_logistic, model, 2, 1), prepared, sep, rng);
    low += s.y[0];
    high += s.y[1];
  }
  const double n = static_cast<double>(pop.size());
  const double k = population_proportion(pop) * n;
  EXPECT_NEAR(low / kReps, k * (k - 1) / (n * (n - 1)), 0.03);
  EXPECT_NEAR(high / kReps, 1 - (n - k) * (n - k - 1) / (n * (n - 1)), 0.03);
  sep.converged = false;
  EXPECT_THROW(
      draw_rss_logistic(pop, config(Design::rss_logistic, model, 4, 1), prepared, sep, rng),
      DataError);
}

}  // namespace
}  // namespace pros
