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

// A five-unit ranked set from the WBCD ranked by four concomitants, used to
// demonstrate the construction of the averaged strength matrix and the
// choice of the unit measured for the second judgment rank.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pros/dataset.hpp"
#include "pros/random.hpp"
#include "pros/ranking.hpp"

namespace pros {

struct WorkedExample {
  std::array<std::int64_t, 5> subject_ids{1033078, 1035283, 1016277, 1017122, 1044572};
  std::vector<std::string> concomitants{
      std::string(wbcd::kSubjectId), std::string(wbcd::kCellSize),
      std::string(wbcd::kCellShape), std::string(wbcd::kBareNuclei)};
  // values[k][unit]
  std::vector<std::vector<double>> values{
      {1033078, 1035283, 1016277, 1017122, 1044572},
      {1, 1, 8, 10, 7},
      {1, 1, 8, 10, 5},
      {1, 1, 4, 10, 9}};
  // Subject ID is ranked uniquely; the cytological scales are paired into
  // {1,2}, {3,4}, ... by c = 2. Every concomitant is ranked ascending.
  std::vector<TieStructure> ties{{1, true}, {2, true}, {2, true}, {2, true}};
  std::vector<double> alpha{0.0468, 0.0453, 0.4537, 0.4542};
  std::size_t target_rank = 1;  // second judgment rank, 0-based
};

struct WorkedExampleResult {
  std::vector<std::vector<double>> discretized;
  std::vector<RankAssignment> assignments;
  std::vector<StrengthMatrix> matrices;
  StrengthMatrix dbar;
  std::vector<std::size_t> maximizers;  // units tied for the column maximum
  std::vector<double> gammas;           // concentration of each maximizer
  Selection selection;
};

inline WorkedExampleResult run_worked_example(const WorkedExample& ex = {}) {
  WorkedExampleResult out;
  for (std::size_t k = 0; k < ex.values.size(); ++k) {
    out.discretized.push_back(discretize(ex.values[k], ex.ties[k]));
    out.assignments.push_back(rank_with_ties(out.discretized.back(), false));
    out.matrices.push_back(strength_matrix(out.assignments.back()));
  }
  out.dbar = averaged_matrix(out.matrices, ex.alpha);
  const std::size_t r = ex.target_rank;
  double best = -1;
  for (std::size_t u = 0; u < out.dbar.size(); ++u) best = std::max(best, out.dbar(u, r));
  for (std::size_t u = 0; u < out.dbar.size(); ++u) {
    if (out.dbar(u, r) >= best - kTieTolerance) {
      out.maximizers.push_back(u);
      out.gammas.push_back(concentration(out.dbar.row(u), r));
    }
  }
  StreamRng rng(0);
  out.selection = select_unit(out.dbar, r, rng);
  return out;
}

}  // namespace pros
