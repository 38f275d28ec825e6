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

#include <string>

#include "pros/pros.hpp"

namespace pros::testing {

inline const std::string kDataFile = PROS_DATA_FILE;

/// The ingested dataset with median imputation, loaded once.
inline const Population& wbcd() {
  static const Population pop = load_population(kDataFile, MissingPolicy::median(), std::nullopt);
  return pop;
}

/// The dataset with the seeded independent covariate appended.
inline const Population& wbcd_with_covariate() {
  static const Population pop =
      load_population(kDataFile, MissingPolicy::median(), 20150101);
  return pop;
}

}  // namespace pros::testing
