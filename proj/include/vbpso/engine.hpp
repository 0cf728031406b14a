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

// Synchronous binary PSO with V-shaped transfers and optional velocity
// legacy correction.
//
// One iteration, for every particle i and bit d in order:
//   v    <- w v + c1 r1 (pbest_d - x_d) + c2 r2 (gbest_d - x_d)
//   v    <- clamp(v, vmax)                      (correction disabled only)
//   flip x_d when r < sigm(v)
//   v    <- correct(v)                          (correction enabled, on flip)
// then every particle is evaluated once and personal/global bests move on
// strict improvement.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "vbpso/bitvector.hpp"
#include "vbpso/errors.hpp"
#include "vbpso/random.hpp"
#include "vbpso/transfer.hpp"

namespace vbpso {

// Inertia weight ramp from `start` at the first iteration to `end` at the
// last. Constant when start == end.
struct WSchedule {
  double start = 1.0;
  double end = 1.0;

  static WSchedule constant(double w) { return {w, w}; }

  bool is_constant() const noexcept { return start == end; }

  void validate() const {
    if (!(std::isfinite(start) && std::isfinite(end) && start > 0.0 && end > 0.0)) {
      throw ConfigError("inertia schedule endpoints must be finite and positive");
    }
  }

  // "a" (constant) or "a-b" (ramp from a to b).
  static WSchedule parse(std::string_view text) {
    auto number = [&](std::string_view tok) {
      double value = 0.0;
      const auto* first = tok.data();
      const auto* last = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (tok.empty() || ec != std::errc{} || ptr != last) {
        throw ConfigError("malformed inertia schedule '" + std::string(text) + "'");
      }
      return value;
    };
    WSchedule out;
    // The separating dash is the first one that is neither a leading sign
    // nor part of an exponent.
    std::size_t dash = std::string_view::npos;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (text[i] == '-' && text[i - 1] != 'e' && text[i - 1] != 'E') {
        dash = i;
        break;
      }
    }
    if (dash == std::string_view::npos) {
      out = constant(number(text));
    } else {
      out = {number(text.substr(0, dash)), number(text.substr(dash + 1))};
    }
    out.validate();
    return out;
  }

  friend bool operator==(const WSchedule&, const WSchedule&) = default;
};

// Shortest decimal that round-trips, e.g. 0.6, 1.2-0.99.
inline std::string to_string(const WSchedule& w) {
  auto fmt = [](double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    std::string s(buf, ptr);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
  };
  if (w.is_constant()) return fmt(w.start);
  return fmt(w.start) + "-" + fmt(w.end);
}

inline double w_at(const WSchedule& schedule, std::size_t iteration,
                   std::size_t max_iterations) {
  if (schedule.is_constant()) return schedule.start;
  if (max_iterations < 2) {
    throw ConfigError("a ramped inertia schedule needs at least 2 iterations");
  }
  const double t = static_cast<double>(iteration) /
                   static_cast<double>(max_iterations - 1);
  return schedule.start + (schedule.end - schedule.start) * t;
}

struct RunConfig {
  TransferKind kind = TransferKind::VT1;
  bool correction = false;
  WSchedule w = WSchedule::constant(1.0);
  std::optional<double> vmax = 5.0;
  double c1 = 2.0;
  double c2 = 2.0;
  std::size_t swarm_size = 20;
  std::size_t dimensions = 0;
  std::size_t max_iterations = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    w.validate();
    if (correction && vmax) {
      throw ConfigError("velocity clamp must be unset when correction is enabled");
    }
    if (!correction && !vmax) {
      throw ConfigError("velocity clamp is required when correction is disabled");
    }
    if (vmax && !(std::isfinite(*vmax) && *vmax > 0.0)) {
      throw ConfigError("vmax must be finite and positive");
    }
    if (!(std::isfinite(c1) && std::isfinite(c2) && c1 >= 0.0 && c2 >= 0.0)) {
      throw ConfigError("c1 and c2 must be finite and non-negative");
    }
    if (swarm_size == 0) throw ConfigError("swarm size must be positive");
    if (dimensions == 0) throw ConfigError("dimensions must be positive");
    if (max_iterations == 1 && !w.is_constant()) {
      throw ConfigError("a ramped inertia schedule needs at least 2 iterations");
    }
  }
};

// A fitness function over bit vectors, larger is better. It writes the
// selection that actually earns the fitness into `representative` (equal
// to the input unless the objective repairs it); personal and global bests
// store that representative.
template <class F>
concept Objective = requires(const F& f, const BitVector& x, BitVector& out) {
  { f(x, out) } -> std::convertible_to<double>;
};

// Adapts a plain `double(const BitVector&)` function to Objective.
template <class Fn>
struct PlainObjective {
  Fn fn;
  double operator()(const BitVector& x, BitVector& representative) const {
    representative = x;
    return static_cast<double>(fn(x));
  }
};
template <class Fn>
PlainObjective(Fn) -> PlainObjective<Fn>;

struct SwarmState {
  std::size_t dimensions = 0;
  std::vector<BitVector> positions;
  std::vector<double> velocities;  // row-major, swarm_size x dimensions
  std::vector<BitVector> pbest_positions;
  std::vector<double> pbest_fitness;
  BitVector gbest_position;
  double gbest_fitness = 0.0;
  std::size_t iteration = 0;

  std::size_t swarm_size() const noexcept { return positions.size(); }
  double& velocity(std::size_t particle, std::size_t dim) {
    return velocities[particle * dimensions + dim];
  }
  double velocity(std::size_t particle, std::size_t dim) const {
    return velocities[particle * dimensions + dim];
  }
};

inline double update_velocity(double v, bool x, bool pbest_bit, bool gbest_bit,
                              double w, double c1, double c2, double r1, double r2) {
  const double to_pbest = static_cast<double>(pbest_bit) - static_cast<double>(x);
  const double to_gbest = static_cast<double>(gbest_bit) - static_cast<double>(x);
  const double out = w * v + c1 * r1 * to_pbest + c2 * r2 * to_gbest;
  if (!std::isfinite(out)) throw DomainError("update_velocity: non-finite result");
  return out;
}

inline double clamp_velocity(double v, std::optional<double> vmax) noexcept {
  if (!vmax) return v;
  return std::clamp(v, -*vmax, *vmax);
}

inline bool decide_jump(TransferKind kind, double v, double r) {
  return r < sigm(kind, v);
}

// Fair-coin positions, zero velocities, bests taken from the (repaired)
// initial positions.
template <Objective Obj, class Generator>
SwarmState initialize_swarm(const RunConfig& config, const Obj& objective, Generator& rng) {
  SwarmState state;
  state.dimensions = config.dimensions;
  state.positions.assign(config.swarm_size, BitVector(config.dimensions));
  state.velocities.assign(config.swarm_size * config.dimensions, 0.0);
  for (auto& position : state.positions) {
    for (std::size_t d = 0; d < config.dimensions; ++d) {
      position.set(d, uniform01(rng) < 0.5);
    }
  }
  state.pbest_positions.resize(config.swarm_size);
  state.pbest_fitness.resize(config.swarm_size);
  for (std::size_t i = 0; i < config.swarm_size; ++i) {
    state.pbest_fitness[i] = objective(state.positions[i], state.pbest_positions[i]);
    if (i == 0 || state.pbest_fitness[i] > state.gbest_fitness) {
      state.gbest_fitness = state.pbest_fitness[i];
      state.gbest_position = state.pbest_positions[i];
    }
  }
  return state;
}

// Advances the swarm by one iteration. Returns the number of bits each
// particle flipped.
template <Objective Obj, class Generator>
std::vector<std::uint32_t> step_swarm(SwarmState& state, const RunConfig& config,
                                      const Obj& objective, Generator& rng) {
  const double w = w_at(config.w, state.iteration, config.max_iterations);
  const std::size_t dims = state.dimensions;
  std::vector<std::uint32_t> flips(state.swarm_size(), 0);

  for (std::size_t i = 0; i < state.swarm_size(); ++i) {
    BitVector& x = state.positions[i];
    const BitVector& pbest = state.pbest_positions[i];
    double* v = state.velocities.data() + i * dims;
    for (std::size_t d = 0; d < dims; ++d) {
      const double r1 = uniform01(rng);
      const double r2 = uniform01(rng);
      double vd = update_velocity(v[d], x[d], pbest[d], state.gbest_position[d], w,
                                  config.c1, config.c2, r1, r2);
      if (!config.correction) vd = clamp_velocity(vd, config.vmax);
      if (decide_jump(config.kind, vd, uniform01(rng))) {
        x.flip(d);
        ++flips[i];
        if (config.correction) vd = correct(config.kind, vd);
      }
      v[d] = vd;
    }
  }

  BitVector representative(dims);
  for (std::size_t i = 0; i < state.swarm_size(); ++i) {
    const double fitness = objective(state.positions[i], representative);
    if (fitness > state.pbest_fitness[i]) {
      state.pbest_fitness[i] = fitness;
      state.pbest_positions[i] = representative;
    }
  }
  for (std::size_t i = 0; i < state.swarm_size(); ++i) {
    if (state.pbest_fitness[i] > state.gbest_fitness) {
      state.gbest_fitness = state.pbest_fitness[i];
      state.gbest_position = state.pbest_positions[i];
    }
  }
  ++state.iteration;
  return flips;
}

struct TraceRecord {
  std::size_t iteration = 0;
  double gbest_fitness = 0.0;
  std::vector<BitVector> positions;
  std::vector<std::uint32_t> flips;  // bits flipped during this iteration
};

// Per-iteration history of a run. records[0] is the initial swarm (no
// flips); records[k] is the state after iteration k.
struct RunTrace {
  std::size_t swarm_size = 0;
  std::size_t dimensions = 0;
  std::vector<TraceRecord> records;

  std::size_t iterations() const noexcept {
    return records.empty() ? 0 : records.size() - 1;
  }
  const BitVector& position(std::size_t k, std::size_t particle) const {
    return records[k].positions[particle];
  }
  double final_gbest() const { return records.back().gbest_fitness; }

  friend bool operator==(const RunTrace& a, const RunTrace& b) {
    if (a.swarm_size != b.swarm_size || a.dimensions != b.dimensions ||
        a.records.size() != b.records.size()) {
      return false;
    }
    for (std::size_t k = 0; k < a.records.size(); ++k) {
      const auto& x = a.records[k];
      const auto& y = b.records[k];
      if (x.iteration != y.iteration || x.gbest_fitness != y.gbest_fitness ||
          x.positions != y.positions || x.flips != y.flips) {
        return false;
      }
    }
    return true;
  }
};

// Runs config.max_iterations iterations from a fresh swarm seeded by
// config.seed. The result depends only on (config, objective).
template <Objective Obj>
RunTrace run(const RunConfig& config, const Obj& objective) {
  config.validate();
  Xoshiro256 rng(config.seed);
  SwarmState state = initialize_swarm(config, objective, rng);

  RunTrace trace;
  trace.swarm_size = config.swarm_size;
  trace.dimensions = config.dimensions;
  trace.records.reserve(config.max_iterations + 1);
  trace.records.push_back({0, state.gbest_fitness, state.positions,
                           std::vector<std::uint32_t>(config.swarm_size, 0)});
  for (std::size_t k = 0; k < config.max_iterations; ++k) {
    auto flips = step_swarm(state, config, objective, rng);
    trace.records.push_back(
        {state.iteration, state.gbest_fitness, state.positions, std::move(flips)});
  }
  return trace;
}

}  // namespace vbpso
