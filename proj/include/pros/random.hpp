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
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pros {

namespace detail {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based random stream. The n-th output is a pure function of
/// (key, n), so streams can be derived for any (seed, config, replicate)
/// triple without shared state. Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit StreamRng(std::uint64_t key = 0) : key_(key) {}

  /// Stream for replicate `replicate` of configuration `config` under
  /// `master_seed`.
  static constexpr StreamRng derive(std::uint64_t master_seed,
                                    std::uint64_t config,
                                    std::uint64_t replicate) {
    std::uint64_t k = detail::mix64(master_seed + detail::kGolden);
    k = detail::mix64(k ^ (config * 0xd1b54a32d192ed03ULL + 1));
    k = detail::mix64(k ^ (replicate * 0xabc98388fb8fac03ULL + 2));
    return StreamRng(k);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    ++counter_;
    return detail::mix64(key_ + counter_ * detail::kGolden);
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

namespace detail {
__extension__ using uint128 = unsigned __int128;
}  // namespace detail

/// Uniform integer in [0, bound). bound must be positive. Lemire's
/// multiply-and-reject, so results do not depend on the standard library's
/// distribution implementation.
template <class Rng>
std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  detail::uint128 m = static_cast<detail::uint128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<detail::uint128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng, class T>
void shuffle(Rng& rng, std::span<T> items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Writes `count` distinct indices drawn uniformly from [0, population)
/// into `out`, in random order. Small draws use rejection against the
/// indices already taken; large draws use a partial Fisher-Yates pass.
template <class Rng>
void sample_without_replacement(Rng& rng, std::size_t population,
                                std::size_t count,
                                std::vector<std::size_t>& out) {
  if (count > population) {
    throw std::invalid_argument("sample larger than population");
  }
  out.clear();
  if (count == 0) return;
  if (count * 8 <= population && count <= 32) {
    while (out.size() < count) {
      const auto c = static_cast<std::size_t>(uniform_index(rng, population));
      bool seen = false;
      for (std::size_t v : out) {
        if (v == c) {
          seen = true;
          break;
        }
      }
      if (!seen) out.push_back(c);
    }
    return;
  }
  std::vector<std::size_t> pool(population);
  for (std::size_t i = 0; i < population; ++i) pool[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(
                           uniform_index(rng, population - i));
    std::swap(pool[i], pool[j]);
  }
  out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
}

}  // namespace pros
