// Copyright 2026 The vbpso Authors
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

// Random sources with a pinned algorithm identity.
//
// Every number reported by the tools depends on the exact stream produced
// here, so none of it is delegated to <random> distributions (whose output is
// implementation-defined). The run generator is xoshiro256** seeded through
// SplitMix64; reals in [0, 1) take the top 53 bits of one draw.

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace vbpso {

// SplitMix64 (Steele, Lea, Flood). Used for seeding and seed derivation.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // The SplitMix64 output finalizer, usable as a stateless 64-bit mixer.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna).
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept : state_{} {
    SplitMix64 seeder(seed);
    for (auto& word : state_) word = seeder();
  }

  constexpr std::uint64_t operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

// Uniform real in [0, 1) with 53 bits of resolution.
template <class Generator>
double uniform01(Generator& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi] by rejection on the top of the 64-bit range.
template <class Generator>
std::int64_t uniform_int(Generator& gen, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(gen());  // full range
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = gen();
  while (draw >= limit) draw = gen();
  return lo + static_cast<std::int64_t>(draw % span);
}

// Seed for (variant, repetition) under a base seed. Each coordinate is
// absorbed through a full SplitMix64 finalization, so distinct coordinates
// land on unrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed,
                                    std::uint64_t variant,
                                    std::uint64_t repetition) noexcept {
  constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t h = SplitMix64::mix(base_seed + gamma);
  h = SplitMix64::mix(h ^ (variant * gamma + 0xD1B54A32D192ED03ULL));
  h = SplitMix64::mix(h ^ (repetition * gamma + 0x8CB92BA72F3D8DD7ULL));
  return h;
}

}  // namespace vbpso
