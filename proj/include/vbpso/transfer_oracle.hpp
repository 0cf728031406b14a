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

// Numerical-inversion oracle for the velocity corrections in transfer.hpp.
//
// Test support only. It evaluates the transfers from their definitions
// (not through vbpso::sigm) and inverts them by bisection over the ordered
// bit patterns of positive doubles, which converges to the closest double in
// at most 64 steps.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vbpso/transfer.hpp"

namespace vbpso::oracle {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transfer value at magnitude a >= 0.
inline double transfer_at(TransferKind kind, double a) {
  switch (kind) {
    case TransferKind::VT1:
      return std::fabs(2.0 / std::numbers::pi *
                       std::atan(std::numbers::pi / 2.0 * a));
    case TransferKind::VT2: {
      if (a > 1.0) {
        const double inv = 1.0 / a;
        return 1.0 / (1.0 + inv * inv);
      }
      return a * a / (1.0 + a * a);
    }
    case TransferKind::VT3:
      return std::fabs(std::tanh(a));
    case TransferKind::VT4: {
      // 2/(1+e^-a) - 1 = (1 - e^-a)/(1 + e^-a)
      return -std::expm1(-a) / (1.0 + std::exp(-a));
    }
  }
  throw OracleError("unknown transfer kind");
}

// 1 - transfer at magnitude a >= 0, from complementary identities so the
// result keeps full relative precision when the transfer is close to 1.
inline double complement_at(TransferKind kind, double a) {
  switch (kind) {
    case TransferKind::VT1:
      // atan(x) + atan(1/x) = pi/2 for x > 0
      if (a == 0.0) return 1.0;
      return 2.0 / std::numbers::pi * std::atan(2.0 / (std::numbers::pi * a));
    case TransferKind::VT2: {
      if (a > 1.0) {
        const double inv = 1.0 / a;
        return inv * inv / (1.0 + inv * inv);
      }
      return 1.0 / (1.0 + a * a);
    }
    case TransferKind::VT3: {
      // 1 - tanh(a) = 2 e^-2a / (1 + e^-2a)
      const double t = std::exp(-2.0 * a);
      return 2.0 * t / (1.0 + t);
    }
    case TransferKind::VT4: {
      // 1 - (1 - e^-a)/(1 + e^-a) = 2 e^-a / (1 + e^-a)
      const double t = std::exp(-a);
      return 2.0 * t / (1.0 + t);
    }
  }
  throw OracleError("unknown transfer kind");
}

namespace detail {

// Smallest x in [lo, hi] (positive doubles) with pred(x) true, assuming
// pred is monotone false -> true over the interval and pred(hi) holds.
template <class Pred>
double first_true(double lo, double hi, Pred pred) {
  auto lo_bits = std::bit_cast<std::uint64_t>(lo);
  auto hi_bits = std::bit_cast<std::uint64_t>(hi);
  while (lo_bits < hi_bits) {
    const std::uint64_t mid = lo_bits + (hi_bits - lo_bits) / 2;
    if (pred(std::bit_cast<double>(mid))) {
      hi_bits = mid;
    } else {
      lo_bits = mid + 1;
    }
  }
  return std::bit_cast<double>(lo_bits);
}

}  // namespace detail

inline constexpr double kBracketLow = 1e-300;
inline constexpr double kBracketHigh = 1e300;

// Solves transfer(x) = 1 - transfer(v) with sign(x) = sign(v) by bisection
// on |x| in [1e-300, 1e300]. Throws OracleError when the target cannot be
// bracketed in that range.
inline double correct_oracle(TransferKind kind, double v) {
  if (!std::isfinite(v) || v == 0.0) {
    throw OracleError("correct_oracle: velocity must be finite and nonzero");
  }
  const double a = std::fabs(v);
  double x = 0.0;
  const double target = complement_at(kind, a);
  if (target <= 0.5) {
    // transfer(x) = target, increasing in x
    if (!(transfer_at(kind, kBracketLow) <= target &&
          transfer_at(kind, kBracketHigh) >= target)) {
      throw OracleError("correct_oracle: cannot bracket " + std::string(to_string(kind)) +
                        " target " + std::to_string(target) + " for v=" +
                        std::to_string(v));
    }
    x = detail::first_true(kBracketLow, kBracketHigh, [&](double c) {
      return transfer_at(kind, c) >= target;
    });
  } else {
    // complement(x) = transfer(v), decreasing in x
    const double rest = transfer_at(kind, a);
    if (!(complement_at(kind, kBracketLow) >= rest &&
          complement_at(kind, kBracketHigh) <= rest)) {
      throw OracleError("correct_oracle: cannot bracket " + std::string(to_string(kind)) +
                        " complement " + std::to_string(rest) + " for v=" +
                        std::to_string(v));
    }
    x = detail::first_true(kBracketLow, kBracketHigh, [&](double c) {
      return complement_at(kind, c) <= rest;
    });
  }
  return std::copysign(x, v);
}

}  // namespace vbpso::oracle
