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

// Built-in ranking models and the tie divisors used by the tie-structure
// study.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pros/dataset.hpp"
#include "pros/designs.hpp"
#include "pros/error.hpp"

namespace pros {

struct ModelDefinition {
  std::string_view name;
  std::vector<std::string_view> concomitants;
};

inline const std::vector<ModelDefinition>& builtin_models() {
  using namespace wbcd;
  static const std::vector<ModelDefinition> models = {
      {"Model 1", {kBareNuclei}},
      {"Model 2", {kSubjectId}},
      {"Model 3", {kBareNuclei, kNormalNucleoli}},
      {"Model 4", {kBareNuclei, kEpithelialSize}},
      {"Model 5", {kBareNuclei, kCellSize, kCellShape}},
      {"Model 6", {kBareNuclei, kCellSize, kSubjectId}},
      {"Model 7", {kBareNuclei, kNormalNucleoli, kClumpThickness, kBlandChromatin}},
      {"Model 8", {kNormalNucleoli, kClumpThickness, kBlandChromatin}},
      {"Model 9", {kIndependentCovariate}},
      {"Model 5*", {kBareNuclei, kCellShape}},
  };
  return models;
}

namespace detail {

inline std::string model_key(std::string_view name) {
  auto key = normalize_name(name);
  if (key.rfind("model", 0) == 0) key.erase(0, 5);
  std::string out;
  for (char ch : key) {
    if (ch != ' ') out.push_back(ch);
  }
  return out;
}

}  // namespace detail

/// Resolves "Model 5", "model5", "5" or "5*" to a built-in model with every
/// tie divisor set to `c`.
inline RankingModel builtin_model(std::string_view name, double c = 1.0) {
  const auto key = detail::model_key(name);
  for (const auto& def : builtin_models()) {
    if (detail::model_key(def.name) == key) {
      RankingModel m{std::string(def.name), {}, std::nullopt};
      for (auto con : def.concomitants) {
        m.concomitants.push_back({std::string(con), TieStructure{c, true}});
      }
      return m;
    }
  }
  throw ConfigError("unknown ranking model '" + std::string(name) + "'");
}

inline bool is_builtin_model(std::string_view name) {
  const auto key = detail::model_key(name);
  for (const auto& def : builtin_models()) {
    if (detail::model_key(def.name) == key) return true;
  }
  return false;
}

/// Effective range delta of a concomitant for the c = delta / H rule:
/// 9 for the ordinal scales (category 9 is rare) and the published spread
/// of the Subject ID codes.
inline double tie_range(std::string_view concomitant) {
  if (normalize_name(concomitant) == normalize_name(wbcd::kSubjectId)) {
    return 13390977.0;
  }
  return 9.0;
}

/// Tie divisor roughly proportional to delta / H, never below 1. For the
/// ordinal scales at H = 2 the ratio 4.5 is taken down to 4.
inline double tied_divisor(std::string_view concomitant, std::size_t h) {
  const double delta = tie_range(concomitant);
  double c = delta / static_cast<double>(h);
  if (delta == 9.0 && h == 2) c = 4.0;
  return c < 1.0 ? 1.0 : c;
}

/// Replaces each concomitant's divisor with tied_divisor(name, h).
inline RankingModel with_tied_divisors(RankingModel m, std::size_t h) {
  for (auto& c : m.concomitants) c.tie = TieStructure{tied_divisor(c.name, h), true};
  return m;
}

}  // namespace pros
