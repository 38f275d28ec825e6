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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pros {

/// One measured unit: its response, target rank and weight vector.
struct ProsObservation {
  int y = 0;
  std::size_t rank = 0;
  std::size_t record = 0;
  std::span<const double> weights;
};

/// Measured responses of one replicate with their weight vectors, stored
/// flat: observation i owns weights[i * set_size, (i + 1) * set_size).
/// SRS samples use set_size 1; RSS samples carry unit vectors.
struct ReplicateSample {
  std::size_t set_size = 1;
  std::vector<std::uint8_t> y;
  std::vector<std::size_t> rank;    // target rank, 0-based
  std::vector<std::size_t> record;  // population index of the measured unit
  std::vector<double> weights;

  std::size_t size() const { return y.size(); }
  std::span<const double> weight_vector(std::size_t i) const {
    return std::span<const double>(weights).subspan(i * set_size, set_size);
  }
  ProsObservation observation(std::size_t i) const {
    return {y[i], rank[i], record[i], weight_vector(i)};
  }

  void reset(std::size_t h, std::size_t reserve) {
    set_size = h;
    y.clear();
    rank.clear();
    record.clear();
    weights.clear();
    y.reserve(reserve);
    rank.reserve(reserve);
    record.reserve(reserve);
    weights.reserve(reserve * h);
  }

  void add(int response, std::size_t r, std::size_t rec,
           std::span<const double> w) {
    y.push_back(static_cast<std::uint8_t>(response != 0));
    rank.push_back(r);
    record.push_back(rec);
    weights.insert(weights.end(), w.begin(), w.end());
  }

  void add_unit(int response, std::size_t r, std::size_t rec) {
    y.push_back(static_cast<std::uint8_t>(response != 0));
    rank.push_back(r);
    record.push_back(rec);
    weights.resize(weights.size() + set_size, 0.0);
    weights[weights.size() - set_size + r] = 1.0;
  }
};

}  // namespace pros
