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

// 0/1 knapsack instances: generation, exact solvers, and fitness with
// greedy infeasibility repair.

#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <exception>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vbpso/bitvector.hpp"
#include "vbpso/errors.hpp"
#include "vbpso/random.hpp"

namespace vbpso {

enum class InstanceType : std::uint8_t { UCI, WCI, SCI, EXTERNAL };

constexpr std::string_view to_string(InstanceType type) noexcept {
  switch (type) {
    case InstanceType::UCI: return "UCI";
    case InstanceType::WCI: return "WCI";
    case InstanceType::SCI: return "SCI";
    case InstanceType::EXTERNAL: return "EXTERNAL";
  }
  return "?";
}

inline std::optional<InstanceType> parse_instance_type(std::string_view text) {
  std::string upper(text);
  for (auto& c : upper) c = static_cast<char>(std::toupper(c));
  if (upper == "UCI") return InstanceType::UCI;
  if (upper == "WCI") return InstanceType::WCI;
  if (upper == "SCI") return InstanceType::SCI;
  if (upper == "EXTERNAL") return InstanceType::EXTERNAL;
  return std::nullopt;
}

struct KnapsackInstance {
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> profits;
  std::int64_t capacity = 0;
  InstanceType type = InstanceType::EXTERNAL;
  std::optional<std::uint64_t> generation_seed;

  std::size_t size() const noexcept { return weights.size(); }

  // Throws DomainError when the structural invariants do not hold.
  void validate() const {
    if (weights.size() != profits.size()) {
      throw DomainError("knapsack instance: weights and profits differ in length");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < 1 || profits[i] < 1) {
        throw DomainError("knapsack instance: item " + std::to_string(i) +
                          " has a weight or profit below 1");
      }
    }
    if (capacity < 0) throw DomainError("knapsack instance: negative capacity");
  }
};

// Generates a UCI/WCI/SCI instance. Weights are uniform integers on [1, R];
// profits are uniform on [1, R] (UCI), uniform on [w - R/10, w + R/10]
// clamped up to 1 (WCI), or exactly w + R/10 (SCI). R/10 is integer
// division. Capacity is floor(S * sum of weights).
inline KnapsackInstance generate(InstanceType type, std::size_t n,
                                 std::int64_t range, double fill,
                                 std::uint64_t seed) {
  if (type == InstanceType::EXTERNAL) {
    throw ConfigError("generate: EXTERNAL instances cannot be generated");
  }
  if (n < 1) throw ConfigError("generate: n must be at least 1");
  if (range < 10) throw ConfigError("generate: R must be at least 10");
  if (!(fill > 0.0 && fill < 1.0)) {
    throw ConfigError("generate: S must lie in (0, 1)");
  }
  if (type == InstanceType::SCI && range % 10 != 0) {
    throw ConfigError("generate: SCI needs R to be a multiple of 10");
  }

  Xoshiro256 rng(seed);
  KnapsackInstance inst;
  inst.type = type;
  inst.generation_seed = seed;
  inst.weights.reserve(n);
  inst.profits.reserve(n);
  const std::int64_t spread = range / 10;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t w = uniform_int(rng, 1, range);
    std::int64_t p = 0;
    switch (type) {
      case InstanceType::UCI:
        p = uniform_int(rng, 1, range);
        break;
      case InstanceType::WCI:
        p = std::max<std::int64_t>(1, uniform_int(rng, w - spread, w + spread));
        break;
      case InstanceType::SCI:
        p = w + spread;
        break;
      case InstanceType::EXTERNAL:
        break;
    }
    inst.weights.push_back(w);
    inst.profits.push_back(p);
  }
  const auto total = std::accumulate(inst.weights.begin(), inst.weights.end(),
                                     std::int64_t{0});
  inst.capacity = static_cast<std::int64_t>(
      std::floor(fill * static_cast<double>(total)));
  return inst;
}

struct KnapsackSolution {
  std::int64_t profit = 0;
  BitVector selection;
};

// Default ceiling on dynamic-programming memory (1 GiB).
inline constexpr std::uint64_t kDefaultDpMemoryBudget = 1ULL << 30;

// Bytes dp_optimal allocates for an instance: one profit row over capacity
// plus one decision bit per (item, capacity) cell.
inline std::uint64_t dp_memory_bytes(const KnapsackInstance& inst) {
  const auto cells = static_cast<std::uint64_t>(std::max<std::int64_t>(inst.capacity, 0)) + 1;
  const std::uint64_t row = cells * sizeof(std::int64_t);
  const std::uint64_t words = (cells + 63) / 64;
  return row + static_cast<std::uint64_t>(inst.size()) * words * 8;
}

// Exact optimum by dynamic programming over capacity.
inline KnapsackSolution dp_optimal(const KnapsackInstance& inst,
                                   std::uint64_t memory_budget = kDefaultDpMemoryBudget) {
  inst.validate();
  KnapsackSolution out{0, BitVector(inst.size())};
  if (inst.size() == 0 || inst.capacity == 0) return out;

  const std::uint64_t need = dp_memory_bytes(inst);
  if (need > memory_budget) {
    throw ResourceError("dp_optimal: capacity " + std::to_string(inst.capacity) +
                            " x " + std::to_string(inst.size()) +
                            " items exceeds the memory budget",
                        need);
  }

  const auto cells = static_cast<std::size_t>(inst.capacity) + 1;
  const std::size_t words = (cells + 63) / 64;
  std::vector<std::int64_t> best(cells, 0);
  std::vector<std::uint64_t> take(inst.size() * words, 0);

  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto w = static_cast<std::size_t>(inst.weights[i]);
    const std::int64_t p = inst.profits[i];
    if (w >= cells) continue;
    std::uint64_t* row = take.data() + i * words;
    for (std::size_t c = cells - 1; c >= w; --c) {
      const std::int64_t with = best[c - w] + p;
      if (with > best[c]) {
        best[c] = with;
        row[c / 64] |= std::uint64_t{1} << (c % 64);
      }
      if (c == w) break;
    }
  }

  out.profit = best[cells - 1];
  std::size_t c = cells - 1;
  for (std::size_t i = inst.size(); i-- > 0;) {
    if ((take[i * words + c / 64] >> (c % 64)) & 1U) {
      out.selection.set(i, true);
      c -= static_cast<std::size_t>(inst.weights[i]);
    }
  }
  return out;
}

inline constexpr std::size_t kBruteForceMaxItems = 24;

// Exhaustive optimum over all 2^n subsets, visited in Gray-code order.
inline std::int64_t brute_force_optimal(const KnapsackInstance& inst) {
  inst.validate();
  const std::size_t n = inst.size();
  if (n > kBruteForceMaxItems) {
    throw DomainError("brute_force_optimal: refusing n=" + std::to_string(n) +
                      " (limit " + std::to_string(kBruteForceMaxItems) + ")");
  }
  std::int64_t best = 0;
  std::int64_t weight = 0;
  std::int64_t profit = 0;
  std::uint32_t mask = 0;
  const std::uint32_t subsets = std::uint32_t{1} << n;
  for (std::uint32_t k = 1; k < subsets; ++k) {
    const auto item = static_cast<std::size_t>(std::countr_zero(k));
    const std::uint32_t bit = std::uint32_t{1} << item;
    mask ^= bit;
    const std::int64_t sign = (mask & bit) ? 1 : -1;
    weight += sign * inst.weights[item];
    profit += sign * inst.profits[item];
    if (weight <= inst.capacity && profit > best) best = profit;
  }
  return best;
}

inline std::int64_t total_weight(const KnapsackInstance& inst, const BitVector& selection) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (selection[i]) sum += inst.weights[i];
  }
  return sum;
}

inline std::int64_t total_profit(const KnapsackInstance& inst, const BitVector& selection) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (selection[i]) sum += inst.profits[i];
  }
  return sum;
}

// Knapsack fitness with greedy repair. Infeasible selections are repaired on
// a copy by dropping selected items in ascending profit/weight order (lower
// index first on ties) until the weight fits.
class KnapsackObjective {
 public:
  explicit KnapsackObjective(KnapsackInstance inst) : inst_(std::move(inst)) {
    inst_.validate();
    drop_order_.resize(inst_.size());
    std::iota(drop_order_.begin(), drop_order_.end(), std::size_t{0});
    std::stable_sort(drop_order_.begin(), drop_order_.end(),
                     [this](std::size_t a, std::size_t b) {
                       // p_a / w_a < p_b / w_b, in integers
                       return inst_.profits[a] * inst_.weights[b] <
                              inst_.profits[b] * inst_.weights[a];
                     });
  }

  const KnapsackInstance& instance() const noexcept { return inst_; }
  std::size_t dimensions() const noexcept { return inst_.size(); }

  // Fitness of `selection`; `repaired` receives the feasible selection that
  // earns it.
  double operator()(const BitVector& selection, BitVector& repaired) const {
    return static_cast<double>(evaluate(selection, repaired));
  }

  std::int64_t evaluate(const BitVector& selection, BitVector& repaired) const {
    if (selection.size() != inst_.size()) {
      throw DomainError("evaluate: selection has length " +
                        std::to_string(selection.size()) + ", instance has " +
                        std::to_string(inst_.size()) + " items");
    }
    repaired = selection;
    std::int64_t weight = total_weight(inst_, selection);
    std::int64_t profit = total_profit(inst_, selection);
    for (std::size_t k = 0; weight > inst_.capacity && k < drop_order_.size(); ++k) {
      const std::size_t item = drop_order_[k];
      if (!repaired[item]) continue;
      repaired.set(item, false);
      weight -= inst_.weights[item];
      profit -= inst_.profits[item];
    }
    return profit;
  }

  std::int64_t evaluate(const BitVector& selection) const {
    BitVector scratch;
    return evaluate(selection, scratch);
  }

 private:
  KnapsackInstance inst_;
  std::vector<std::size_t> drop_order_;
};

inline std::int64_t evaluate(const KnapsackInstance& inst, const BitVector& selection) {
  return KnapsackObjective(inst).evaluate(selection);
}

// Instance text format:
//   n capacity TYPE
//   weight profit        (n lines)
inline void write_instance(std::ostream& out, const KnapsackInstance& inst) {
  out << inst.size() << ' ' << inst.capacity << ' ' << to_string(inst.type) << '\n';
  for (std::size_t i = 0; i < inst.size(); ++i) {
    out << inst.weights[i] << ' ' << inst.profits[i] << '\n';
  }
}

inline KnapsackInstance read_instance(std::istream& in) {
  auto parse_int = [](std::string_view tok, std::size_t line, const char* what) {
    std::int64_t value = 0;
    std::size_t used = 0;
    try {
      value = std::stoll(std::string(tok), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) {
      throw ParseError(what, line, "expected a decimal integer, got '" + std::string(tok) + "'");
    }
    return value;
  };
  auto split = [](const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
  };

  std::string text;
  std::size_t line = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, text)) {
      ++line;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (text.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("", 0, "instance file is empty");
  const auto header = split(text);
  if (header.size() != 3) {
    throw ParseError("header", line, "expected 'n capacity type'");
  }
  const std::int64_t n = parse_int(header[0], line, "n");
  if (n < 0) throw ParseError("n", line, "item count is negative");
  KnapsackInstance inst;
  inst.capacity = parse_int(header[1], line, "capacity");
  if (inst.capacity < 0) throw ParseError("capacity", line, "capacity is negative");
  const auto type = parse_instance_type(header[2]);
  if (!type) throw ParseError("type", line, "unknown instance type '" + header[2] + "'");
  inst.type = *type;

  inst.weights.reserve(static_cast<std::size_t>(n));
  inst.profits.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (!next_line()) {
      throw ParseError("", line, "expected " + std::to_string(n) + " items, found " +
                                     std::to_string(i));
    }
    const auto tokens = split(text);
    if (tokens.size() != 2) throw ParseError("item", line, "expected 'weight profit'");
    const std::int64_t w = parse_int(tokens[0], line, "weight");
    const std::int64_t p = parse_int(tokens[1], line, "profit");
    if (w < 1) throw ParseError("weight", line, "weight must be at least 1");
    if (p < 1) throw ParseError("profit", line, "profit must be at least 1");
    inst.weights.push_back(w);
    inst.profits.push_back(p);
  }
  if (next_line()) throw ParseError("", line, "trailing content after the last item");
  return inst;
}

}  // namespace vbpso
