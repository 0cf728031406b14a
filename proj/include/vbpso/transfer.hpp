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

// V-shaped transfer functions and their velocity legacy corrections.
//
// A V-shaped transfer maps a signed velocity to the probability that the
// bit flips. The velocity is expressed relative to the bit's current value,
// so after a flip the stored velocity has to be re-expressed relative to the
// new value. The corrected velocity v' keeps the sign of v and satisfies
//
//     transfer(v') = 1 - transfer(v).
//
// All four transfers are even and strictly increasing in |v|, which makes
// the corrected value unique.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "vbpso/errors.hpp"

namespace vbpso {

enum class TransferKind : std::uint8_t { VT1, VT2, VT3, VT4 };

inline constexpr std::array<TransferKind, 4> kAllTransferKinds = {
    TransferKind::VT1, TransferKind::VT2, TransferKind::VT3,
    TransferKind::VT4};

constexpr std::string_view to_string(TransferKind kind) noexcept {
  switch (kind) {
    case TransferKind::VT1: return "VT1";
    case TransferKind::VT2: return "VT2";
    case TransferKind::VT3: return "VT3";
    case TransferKind::VT4: return "VT4";
  }
  return "?";
}

// Accepts VT1..VT4 or just 1..4, case-insensitively.
inline std::optional<TransferKind> parse_transfer_kind(std::string_view text) {
  std::string lower(text);
  for (auto& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower.starts_with("vt")) lower.erase(0, 2);
  if (lower == "1") return TransferKind::VT1;
  if (lower == "2") return TransferKind::VT2;
  if (lower == "3") return TransferKind::VT3;
  if (lower == "4") return TransferKind::VT4;
  return std::nullopt;
}

// Magnitude bound on corrected velocities. The transfers are saturated long
// before this, so the clamp is invisible in jump probabilities.
inline constexpr double kMaxCorrectedVelocity = 1e12;

namespace detail {

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + ": velocity is not finite");
  }
}

// log((1 + 3t) / (1 - t)) with t = exp(-a), a > 0, written as
// log1p(4t / (1 - t)) so that neither large nor small a overflows.
inline double log_one_plus_three(double a) {
  const double t = std::exp(-a);
  return std::log1p(4.0 * t / -std::expm1(-a));
}

}  // namespace detail

// Jump probability for velocity v.
inline double sigm(TransferKind kind, double v) {
  detail::require_finite(v, "sigm");
  const double a = std::fabs(v);
  switch (kind) {
    case TransferKind::VT1:
      return 2.0 * std::numbers::inv_pi * std::atan(0.5 * std::numbers::pi * a);
    case TransferKind::VT2:
      // v^2 / (1 + v^2) without squaring large magnitudes.
      if (a <= 1.0) return a * a / (1.0 + a * a);
      return 1.0 / (1.0 + (1.0 / a) / a);
    case TransferKind::VT3:
      return std::tanh(a);
    case TransferKind::VT4:
      // 2 / (1 + e^-a) - 1 == tanh(a / 2), without the cancellation near 0.
      return std::tanh(0.5 * a);
  }
  throw DomainError("sigm: unknown transfer kind");
}

// Velocity to store after the bit it governs has flipped.
//
// Closed forms, for a = |v| and the sign of v carried through:
//   VT1: 4 / (pi^2 v)
//   VT2: 1 / v
//   VT3: 1/2 log((e^a + 3e^-a) / (e^a - e^-a))
//   VT4: log((1 + 3e^-a) / (1 - e^-a))
// The result is clamped to kMaxCorrectedVelocity in magnitude. When the
// exact result underflows (VT3/VT4 with a in the hundreds) the smallest
// subnormal of the right sign is returned instead of zero.
inline double correct(TransferKind kind, double v) {
  detail::require_finite(v, "correct");
  if (v == 0.0) {
    throw DomainError("correct: velocity is zero, no jump could have occurred");
  }
  const double a = std::fabs(v);
  double magnitude = 0.0;
  switch (kind) {
    case TransferKind::VT1:
      magnitude = 4.0 / (std::numbers::pi * std::numbers::pi * a);
      break;
    case TransferKind::VT2:
      magnitude = 1.0 / a;
      break;
    case TransferKind::VT3:
      magnitude = 0.5 * detail::log_one_plus_three(2.0 * a);
      break;
    case TransferKind::VT4:
      magnitude = detail::log_one_plus_three(a);
      break;
  }
  if (!(magnitude <= kMaxCorrectedVelocity)) magnitude = kMaxCorrectedVelocity;
  if (magnitude == 0.0) magnitude = std::numeric_limits<double>::denorm_min();
  return std::copysign(magnitude, v);
}

}  // namespace vbpso
