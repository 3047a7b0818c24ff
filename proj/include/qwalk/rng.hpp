// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace qwalk {

/// SplitMix64 output function (Steele, Lea & Flood). Bijective on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based uniform generator. Every draw is a pure function of
/// (key, counter), so realizations can be evaluated in any order or on any
/// thread and still produce identical numbers.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  constexpr CounterRng(std::uint64_t master_seed, std::uint64_t stream)
      : key_(mix64(master_seed ^ mix64(stream * kGamma + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-half_width, half_width].
  constexpr double symmetric(std::uint64_t counter, double half_width) const {
    return -half_width + 2.0 * half_width * uniform(counter);
  }

  constexpr std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

/// Counter for lattice site x at a given step; distinct for every pair.
constexpr std::uint64_t site_counter(int x, int step) {
  const auto zig = x >= 0 ? 2 * static_cast<std::uint64_t>(x)
                          : 2 * static_cast<std::uint64_t>(-static_cast<std::int64_t>(x)) - 1;
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(step)) << 32) | zig;
}

}  // namespace qwalk
