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
#include <array>
#include <numeric>
#include <set>
#include <vector>

#include "pros/pros.hpp"

namespace pros {
namespace {

using Matrix = std::vector<std::vector<double>>;

constexpr double h_ = 0.5;

// Matrices displayed for the five-unit example, rows u11..u51.
const std::array<Matrix, 4> kExampleD = {{
    {{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 1}},
    {{h_, h_, 0, 0, 0}, {h_, h_, 0, 0, 0}, {0, 0, h_, h_, 0}, {0, 0, 0, 0, 1}, {0, 0, h_, h_, 0}},
    {{h_, h_, 0, 0, 0}, {h_, h_, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0, 0, 1, 0, 0}},
    {{h_, h_, 0, 0, 0}, {h_, h_, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, h_, h_}, {0, 0, 0, h_, h_}},
}};

const Matrix kExampleDbar = {
    {0.4766, 0.4766, 0.04680, 0.00000, 0.0000},
    {0.4766, 0.4766, 0.00000, 0.04680, 0.0000},
    {0.0468, 0.0000, 0.47685, 0.47635, 0.0000},
    {0.0000, 0.0468, 0.00000, 0.22710, 0.7261},
    {0.0000, 0.0000, 0.47635, 0.24975, 0.2739},
};

void expect_matrix_near(const StrengthMatrix& got, const Matrix& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t r = 0; r < want.size(); ++r) {
    for (std::size_t c = 0; c < want.size(); ++c) {
      EXPECT_NEAR(got(r, c), want[r][c], tol) << "row " << r << " col " << c;
    }
  }
}

std::vector<std::vector<std::size_t>> all_positions(const RankAssignment& a) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t u = 0; u < a.size(); ++u) out.push_back(a.positions(u));
  return out;
}

TEST(Discretize, Examples) {
  EXPECT_EQ(discretize(std::vector<double>{1, 2, 3, 4, 5}, {2.0, true}),
            (std::vector<double>{1, 1, 2, 2, 3}));
  const std::vector<double> raw{7, 3, 10, 1, 2.4, 2.6};
  EXPECT_EQ(discretize(raw, {1.0, true}), raw);
  EXPECT_EQ(discretize(std::vector<double>{9, 10}, {4.0, true}),
            (std::vector<double>{2, 3}));
  EXPECT_EQ(discretize(std::vector<double>{-12.5, 12.5}, {5.0, true}),
            (std::vector<double>{-3, 3}));
}

TEST(Discretize, Errors) {
  EXPECT_THROW(discretize(std::vector<double>{1}, {0.5, true}), ConfigError);
  EXPECT_THROW(discretize(std::vector<double>{NAN}, {1.0, true}), DataError);
}

TEST(RankWithTies, RawValuesBeforeDiscretization) {
  const auto a = rank_with_ties(std::vector<double>{1, 1, 4, 10, 9}, false);
  EXPECT_EQ(a.groups.size(), 4u);
  EXPECT_EQ(all_positions(a),
            (std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}, {2}, {4}, {3}}));
}

TEST(RankWithTies, ExampleRowAfterDiscretization) {
  const auto d = discretize(std::vector<double>{1, 1, 4, 10, 9}, {2.0, true});
  EXPECT_EQ(d, (std::vector<double>{1, 1, 2, 5, 5}));
  const auto a = rank_with_ties(d, false);
  ASSERT_EQ(a.groups.size(), 3u);
  EXPECT_EQ(all_positions(a),
            (std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}, {2}, {3, 4}, {3, 4}}));
  expect_matrix_near(strength_matrix(a), kExampleD[3], 0);
}

TEST(RankWithTies, TotalTie) {
  const auto a = rank_with_ties(std::vector<double>{4, 4, 4, 4}, false);
  ASSERT_EQ(a.groups.size(), 1u);
  for (std::size_t u = 0; u < 4; ++u) {
    EXPECT_EQ(a.positions(u), (std::vector<std::size_t>{0, 1, 2, 3}));
  }
  expect_matrix_near(strength_matrix(rank_with_ties(std::vector<double>{2, 2}, false)),
                     {{h_, h_}, {h_, h_}}, 0);
}

TEST(RankWithTies, ReverseOfDistinctValues) {
  const std::vector<double> v{3, 9, 1, 7, 5};
  const auto up = rank_with_ties(v, false);
  const auto down = rank_with_ties(v, true);
  for (std::size_t u = 0; u < v.size(); ++u) {
    ASSERT_EQ(up.positions(u).size(), 1u);
    EXPECT_EQ(down.positions(u)[0], v.size() - 1 - up.positions(u)[0]);
  }
}

TEST(StrengthMatrix, UniqueRanksGivePermutation) {
  const auto d = strength_matrix(rank_with_ties(std::vector<double>{30, 10, 20}, false));
  expect_matrix_near(d, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, 0);
}

TEST(AlphaWeights, Examples) {
  const auto a = alpha_weights({{"id", -0.0847}, {"size", 0.8208}, {"shape", 0.8218},
                                {"nuclei", 0.8226}});
  const double want[] = {0.0332, 0.3219, 0.3223, 0.3226};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a.weights[k], want[k], 5e-5);
  EXPECT_DOUBLE_EQ(alpha_weights({{"x", -0.3}}).weights[0], 1.0);
  const auto eq = alpha_weights({{"a", 0.4}, {"b", -0.4}});
  EXPECT_DOUBLE_EQ(eq.weights[0], 0.5);
  EXPECT_DOUBLE_EQ(eq.weights[1], 0.5);
  EXPECT_THROW(alpha_weights({{"a", 0.0}, {"b", 0.0}}), DataError);
  EXPECT_THROW(AlphaWeights::explicit_weights({"a", "b"}, {0.5, 0.6}), ConfigError);
}

TEST(WorkedExample, MatricesAndSelection) {
  const WorkedExample ex;
  const auto res = run_worked_example(ex);
  ASSERT_EQ(res.matrices.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    SCOPED_TRACE(k);
    expect_matrix_near(res.matrices[k], kExampleD[k], 0);
  }
  expect_matrix_near(res.dbar, kExampleDbar, 5e-5);
  EXPECT_EQ(res.maximizers, (std::vector<std::size_t>{0, 1}));
  ASSERT_EQ(res.gammas.size(), 2u);
  EXPECT_NEAR(res.gammas[0], 0.5234, 5e-5);
  EXPECT_NEAR(res.gammas[1], 0.6638, 5e-5);
  EXPECT_EQ(res.selection.unit, 0u);
  const double omega[] = {0.4766, 0.4766, 0.0468, 0, 0};
  for (std::size_t t = 0; t < 5; ++t) EXPECT_NEAR(res.selection.weights[t], omega[t], 5e-5);
}

TEST(AveragedMatrix, Degenerate) {
  const auto d = strength_matrix(rank_with_ties(std::vector<double>{1, 1, 2}, false));
  const StrengthMatrix one[] = {d};
  const double a1[] = {1.0};
  expect_matrix_near(averaged_matrix(one, a1), {{h_, h_, 0}, {h_, h_, 0}, {0, 0, 1}}, 0);
  const StrengthMatrix same[] = {d, d, d};
  const double a3[] = {0.2, 0.3, 0.5};
  const auto avg = averaged_matrix(same, a3);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(avg.data()[i], d.data()[i], 1e-15);
  const StrengthMatrix mixed[] = {d, StrengthMatrix(2)};
  const double a2[] = {0.5, 0.5};
  EXPECT_THROW(averaged_matrix(mixed, a2), ConfigError);
}

TEST(Concentration, Examples) {
  EXPECT_NEAR(concentration(std::vector<double>{0.4766, 0.4766, 0.0468, 0, 0}, 1), 0.5234,
              1e-12);
  EXPECT_NEAR(concentration(std::vector<double>{0.4766, 0.4766, 0, 0.0468, 0}, 1), 0.6638,
              1e-12);
  EXPECT_EQ(concentration(std::vector<double>{0, 0, 1, 0}, 2), 0.0);
}

TEST(SelectUnit, PermutationPicksTheUniqueUnit) {
  const auto d = strength_matrix(rank_with_ties(std::vector<double>{5, 1, 3, 4}, false));
  StreamRng rng(1);
  for (std::size_t r = 0; r < 4; ++r) {
    const auto s = select_unit(d, r, rng);
    EXPECT_EQ(d(s.unit, r), 1.0);
  }
  EXPECT_EQ(rng.counter(), 0u);
}

TEST(SelectUnit, UniformMatrixSelectsUniformly) {
  constexpr std::size_t H = 5;
  constexpr int kDraws = 10000;
  const auto d = strength_matrix(rank_with_ties(std::vector<double>(H, 1.0), false));
  StreamRng rng(99);
  std::array<int, H> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[select_unit(d, 2, rng).unit];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / kDraws, 1.0 / H, 0.02);
}

TEST(SelectUnit, ToleranceTreatsRoundingAsTie) {
  StrengthMatrix d(2);
  d(0, 0) = 0.5;
  d(0, 1) = 0.5;
  d(1, 0) = 0.5 + 1e-12;
  d(1, 1) = 0.5 - 1e-12;
  std::array<int, 2> counts{};
  StreamRng rng(5);
  for (int i = 0; i < 2000; ++i) ++counts[select_unit(d, 0, rng).unit];
  EXPECT_GT(counts[0], 800);
  EXPECT_GT(counts[1], 800);
}

// Random sets with random tie divisors and directions.
class RankingProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RankingProperties, Invariants) {
  StreamRng rng(GetParam());
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = 1 + uniform_index(rng, 10);
    const std::size_t k = 1 + uniform_index(rng, 4);
    std::vector<StrengthMatrix> mats;
    std::vector<double> alpha;
    double total = 0;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> v(h);
      for (auto& x : v) x = static_cast<double>(1 + uniform_index(rng, 10));
      const double c = 1.0 + 3.0 * uniform01(rng);
      const bool reverse = uniform_index(rng, 2) == 1;
      const auto a = rank_with_ties(discretize(v, {c, true}), reverse);

      std::vector<int> seen(h, 0);
      for (const auto& g : a.groups) {
        const auto p0 = a.first[g.front()];
        for (auto u : g) {
          ++seen[u];
          ASSERT_EQ(a.first[u], p0);
          ASSERT_EQ(a.width[u], g.size());
        }
      }
      for (int s : seen) ASSERT_EQ(s, 1);
      std::size_t next = 0;
      for (const auto& g : a.groups) {
        ASSERT_EQ(a.first[g.front()], next);
        next += g.size();
      }
      ASSERT_EQ(next, h);

      const auto mirrored = rank_with_ties(discretize(v, {c, true}), !reverse);
      for (std::size_t u = 0; u < h; ++u) {
        std::set<std::size_t> m;
        for (auto p : a.positions(u)) m.insert(h - 1 - p);
        const auto q = mirrored.positions(u);
        ASSERT_EQ(m, std::set<std::size_t>(q.begin(), q.end()));
      }

      const auto d = strength_matrix(a);
      ASSERT_TRUE(d.is_doubly_stochastic());
      mats.push_back(d);
      alpha.push_back(uniform01(rng) + 1e-3);
      total += alpha.back();
    }
    for (auto& w : alpha) w /= total;
    const auto dbar = averaged_matrix(mats, alpha);
    ASSERT_TRUE(dbar.is_row_stochastic(1e-12));
    ASSERT_TRUE(dbar.is_doubly_stochastic(1e-12));

    const std::size_t r = uniform_index(rng, h);
    auto r1 = rng, r2 = rng;
    const auto s1 = select_unit(dbar, r, r1);
    const auto s2 = select_unit(dbar, r, r2);
    ASSERT_EQ(s1.unit, s2.unit);
    for (std::size_t u = 0; u < h; ++u) ASSERT_LE(dbar(u, r), dbar(s1.unit, r) + 1e-9);
  }
}

TEST_P(RankingProperties, DistinctValuesGivePermutationMatrices) {
  StreamRng rng(GetParam() + 17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t h = 1 + uniform_index(rng, 12);
    std::vector<double> v(h);
    std::iota(v.begin(), v.end(), 1.0);
    shuffle(rng, std::span<double>(v));
    const auto d = strength_matrix(rank_with_ties(discretize(v, {1.0, true}), false));
    for (std::size_t u = 0; u < h; ++u) {
      int ones = 0;
      for (std::size_t p = 0; p < h; ++p) {
        ASSERT_TRUE(d(u, p) == 0.0 || d(u, p) == 1.0);
        ones += d(u, p) == 1.0;
      }
      ASSERT_EQ(ones, 1);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RankingProperties, ::testing::Values(1u, 2u, 3u, 4u));

}  // namespace
}  // namespace pros
