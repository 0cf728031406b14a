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

// Trace analysis: per-step Hamming distance (Dist), effective Hamming
// distance gain (Dist_eff: distance from the new position to the nearest
// position the particle had visited before), the useless jump volume
// sum(Dist - Dist_eff), and convergence statistics.
//
// A particle's history starts at its initial position (record 0).

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "vbpso/bitvector.hpp"
#include "vbpso/engine.hpp"
#include "vbpso/errors.hpp"

namespace vbpso {

namespace detail {

inline void check_particle(const RunTrace& trace, std::size_t particle) {
  if (particle >= trace.swarm_size) {
    throw DomainError("particle " + std::to_string(particle) + " out of range (swarm of " +
                      std::to_string(trace.swarm_size) + ")");
  }
}

inline void check_step(const RunTrace& trace, std::size_t k) {
  if (k < 1 || k > trace.iterations()) {
    throw DomainError("iteration " + std::to_string(k) + " out of range [1, " +
                      std::to_string(trace.iterations()) + "]");
  }
}

}  // namespace detail

inline std::size_t dist_iteration(const RunTrace& trace, std::size_t particle, std::size_t k) {
  detail::check_particle(trace, particle);
  detail::check_step(trace, k);
  return hamming(trace.position(k - 1, particle), trace.position(k, particle));
}

// Minimum Hamming distance from the position at k to any of the particle's
// positions at 0..k-1.
inline std::size_t dist_eff_iteration(const RunTrace& trace, std::size_t particle,
                                      std::size_t k) {
  detail::check_particle(trace, particle);
  detail::check_step(trace, k);
  const BitVector& now = trace.position(k, particle);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t r = k; r-- > 0;) {
    const std::size_t d = hamming(now, trace.position(r, particle));
    if (d < best) {
      best = d;
      if (best == 0) break;
    }
  }
  return best;
}

// Dist and Dist_eff of one particle for every step 1..K; index 0 holds 0.
struct DistanceSeries {
  std::vector<std::size_t> dist;
  std::vector<std::size_t> dist_eff;
};

inline DistanceSeries particle_distances(const RunTrace& trace, std::size_t particle) {
  detail::check_particle(trace, particle);
  const std::size_t steps = trace.iterations();
  DistanceSeries out{std::vector<std::size_t>(steps + 1, 0),
                     std::vector<std::size_t>(steps + 1, 0)};
  for (std::size_t k = 1; k <= steps; ++k) {
    out.dist[k] = dist_iteration(trace, particle, k);
    // Dist_eff <= Dist always; a zero step is already minimal.
    out.dist_eff[k] = out.dist[k] == 0 ? 0 : dist_eff_iteration(trace, particle, k);
  }
  return out;
}

// Useless jump volume over steps m..n: sum over particles and steps of
// Dist - Dist_eff.
inline std::uint64_t pujv(const RunTrace& trace, std::size_t m, std::size_t n) {
  if (m < 1 || m > n || n > trace.iterations()) {
    throw DomainError("pujv: invalid range [" + std::to_string(m) + ", " + std::to_string(n) +
                      "] for a trace of " + std::to_string(trace.iterations()) + " iterations");
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < trace.swarm_size; ++i) {
    for (std::size_t k = m; k <= n; ++k) {
      const std::size_t dist = dist_iteration(trace, i, k);
      if (dist == 0) continue;
      total += dist - dist_eff_iteration(trace, i, k);
    }
  }
  return total;
}

// Last iteration at which the global best strictly improved (0 if never).
inline std::size_t convergence_round(const RunTrace& trace) {
  if (trace.records.empty()) throw DomainError("convergence_round: empty trace");
  std::size_t last = 0;
  for (std::size_t k = 1; k < trace.records.size(); ++k) {
    if (trace.records[k].gbest_fitness > trace.records[k - 1].gbest_fitness) last = k;
  }
  return last;
}

// First iteration at which the global best equals its final value.
inline std::size_t first_discovery_round(const RunTrace& trace) {
  if (trace.records.empty()) throw DomainError("first_discovery_round: empty trace");
  const double final_value = trace.final_gbest();
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    if (trace.records[k].gbest_fitness == final_value) return k;
  }
  return trace.records.size() - 1;
}

// Per-step swarm means of Dist and Dist_eff plus the cumulative useless
// jump volume, computed in one pass over every particle's history.
struct TraceMetrics {
  std::vector<double> mean_dist;      // index k = 1..K, index 0 is 0
  std::vector<double> mean_dist_eff;
  std::vector<std::uint64_t> cum_pujv;  // PUJV over steps 1..k
  std::vector<DistanceSeries> per_particle;

  std::uint64_t total_pujv() const { return cum_pujv.empty() ? 0 : cum_pujv.back(); }
};

inline TraceMetrics compute_metrics(const RunTrace& trace) {
  const std::size_t steps = trace.iterations();
  TraceMetrics out;
  out.mean_dist.assign(steps + 1, 0.0);
  out.mean_dist_eff.assign(steps + 1, 0.0);
  out.cum_pujv.assign(steps + 1, 0);
  out.per_particle.reserve(trace.swarm_size);
  std::vector<std::uint64_t> useless(steps + 1, 0);
  for (std::size_t i = 0; i < trace.swarm_size; ++i) {
    out.per_particle.push_back(particle_distances(trace, i));
    const auto& series = out.per_particle.back();
    for (std::size_t k = 1; k <= steps; ++k) {
      out.mean_dist[k] += static_cast<double>(series.dist[k]);
      out.mean_dist_eff[k] += static_cast<double>(series.dist_eff[k]);
      useless[k] += series.dist[k] - series.dist_eff[k];
    }
  }
  const auto particles = static_cast<double>(trace.swarm_size);
  for (std::size_t k = 1; k <= steps; ++k) {
    out.mean_dist[k] /= particles;
    out.mean_dist_eff[k] /= particles;
    out.cum_pujv[k] = out.cum_pujv[k - 1] + useless[k];
  }
  return out;
}

}  // namespace vbpso
