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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "vbpso/knapsack.hpp"

namespace vbpso {
namespace {

// (w, p) = (2,3), (3,4), (4,5), C = 5
KnapsackInstance three_items() {
  KnapsackInstance inst;
  inst.weights = {2, 3, 4};
  inst.profits = {3, 4, 5};
  inst.capacity = 5;
  return inst;
}

// Exhaustive optimum written independently of brute_force_optimal's Gray
// walk: every mask, sums recomputed from scratch.
std::int64_t enumerate_optimum(const KnapsackInstance& inst) {
  std::int64_t best = 0;
  const std::size_t n = inst.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t w = 0, p = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        w += inst.weights[i];
        p += inst.profits[i];
      }
    }
    if (w <= inst.capacity) best = std::max(best, p);
  }
  return best;
}

TEST(Generate, SciProfitsAreWeightPlusTenthOfRange) {
  const auto inst = generate(InstanceType::SCI, 500, 1000, 0.5, 3);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    EXPECT_EQ(inst.profits[i], inst.weights[i] + 100);
  }
}

TEST(Generate, CapacityIsFlooredFractionOfWeightSum) {
  // A single item of weight 10 gives capacity floor(0.5 * 10) = 5.
  bool found = false;
  for (std::uint64_t seed = 0; seed < 1000 && !found; ++seed) {
    const auto inst = generate(InstanceType::UCI, 1, 10, 0.5, seed);
    if (inst.weights[0] == 10) {
      EXPECT_EQ(inst.capacity, 5);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  for (auto type : {InstanceType::UCI, InstanceType::WCI, InstanceType::SCI}) {
    for (double s : {0.1, 0.37, 0.5, 0.9}) {
      const auto inst = generate(type, 77, 1000, s, 5);
      const auto total = std::accumulate(inst.weights.begin(), inst.weights.end(), std::int64_t{0});
      EXPECT_EQ(inst.capacity, static_cast<std::int64_t>(std::floor(s * static_cast<double>(total))));
    }
  }
}

TEST(Generate, BoundsHoldForAllTypes) {
  for (auto type : {InstanceType::UCI, InstanceType::WCI, InstanceType::SCI}) {
    const auto inst = generate(type, 20000, 1000, 0.5, 17);
    EXPECT_EQ(inst.type, type);
    EXPECT_EQ(inst.generation_seed, 17u);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      ASSERT_GE(inst.weights[i], 1);
      ASSERT_LE(inst.weights[i], 1000);
      ASSERT_GE(inst.profits[i], 1);
      if (type == InstanceType::UCI) {
        ASSERT_LE(inst.profits[i], 1000);
      }
    }
  }
}

TEST(Generate, WeaklyCorrelatedProfitsClampAtOne) {
  // 10^5 draws: profits stay in [max(1, w - R/10), w + R/10], and light
  // items do hit the clamp.
  const auto inst = generate(InstanceType::WCI, 100000, 1000, 0.5, 99);
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto w = inst.weights[i];
    const auto p = inst.profits[i];
    ASSERT_LE(p, w + 100);
    ASSERT_GE(p, std::max<std::int64_t>(1, w - 100));
    if (w < 100 && p == 1) ++clamped;
  }
  EXPECT_GT(clamped, 0u);
}

TEST(Generate, DeterministicPerSeed) {
  const auto a = generate(InstanceType::WCI, 50, 1000, 0.5, 8);
  const auto b = generate(InstanceType::WCI, 50, 1000, 0.5, 8);
  const auto c = generate(InstanceType::WCI, 50, 1000, 0.5, 9);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.profits, b.profits);
  EXPECT_NE(a.weights, c.weights);
}

TEST(Generate, RejectsBadParameters) {
  EXPECT_THROW(generate(InstanceType::SCI, 10, 1005, 0.5, 0), ConfigError);
  EXPECT_THROW(generate(InstanceType::UCI, 0, 1000, 0.5, 0), ConfigError);
  EXPECT_THROW(generate(InstanceType::UCI, 10, 9, 0.5, 0), ConfigError);
  EXPECT_THROW(generate(InstanceType::UCI, 10, 1000, 1.0, 0), ConfigError);
  EXPECT_THROW(generate(InstanceType::EXTERNAL, 10, 1000, 0.5, 0), ConfigError);
}

TEST(DpOptimal, ThreeItemExample) {
  const auto sol = dp_optimal(three_items());
  EXPECT_EQ(sol.profit, 7);
  EXPECT_EQ(sol.selection.to_string(), "110");
  EXPECT_EQ(enumerate_optimum(three_items()), 7);
}

TEST(DpOptimal, EdgeCases) {
  auto inst = three_items();
  inst.capacity = 0;
  EXPECT_EQ(dp_optimal(inst).profit, 0);

  KnapsackInstance exact;
  exact.weights = {5};
  exact.profits = {9};
  exact.capacity = 5;
  EXPECT_EQ(dp_optimal(exact).profit, 9);
  EXPECT_EQ(dp_optimal(KnapsackInstance{}).profit, 0);
}

TEST(DpOptimal, ReportsMemoryRequirement) {
  KnapsackInstance huge;
  huge.weights = {1, 2};
  huge.profits = {1, 2};
  huge.capacity = std::int64_t{1} << 40;
  try {
    (void)dp_optimal(huge);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.required_bytes(), dp_memory_bytes(huge));
    EXPECT_GT(e.required_bytes(), kDefaultDpMemoryBudget);
  }
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_optimal(three_items()), 7);
  EXPECT_EQ(brute_force_optimal(KnapsackInstance{}), 0);
  auto heavy = three_items();
  heavy.capacity = 1;
  EXPECT_EQ(brute_force_optimal(heavy), 0);
  const auto big = generate(InstanceType::UCI, 25, 100, 0.5, 1);
  EXPECT_THROW(brute_force_optimal(big), DomainError);
}

TEST(ExactSolvers, AgreeOnRandomInstances) {
  Xoshiro256 rng(2718);
  const InstanceType types[] = {InstanceType::UCI, InstanceType::WCI, InstanceType::SCI};
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 16));
    const auto inst = generate(types[trial % 3], n, 100, 0.2 + 0.6 * uniform01(rng), rng());
    const auto sol = dp_optimal(inst);
    ASSERT_EQ(sol.profit, brute_force_optimal(inst));
    ASSERT_EQ(sol.profit, enumerate_optimum(inst));
    ASSERT_LE(total_weight(inst, sol.selection), inst.capacity);
    ASSERT_EQ(total_profit(inst, sol.selection), sol.profit);
  }
}

TEST(Evaluate, Examples) {
  const auto inst = three_items();
  EXPECT_EQ(evaluate(inst, BitVector::from_string("000")), 0);
  EXPECT_EQ(evaluate(inst, BitVector::from_string("110")), 7);
  // Densities 1.5, 1.33, 1.25: dropping item 3 leaves weight 5 = C, which
  // is feasible, so repair stops there.
  BitVector repaired;
  EXPECT_EQ(KnapsackObjective(inst).evaluate(BitVector::from_string("111"), repaired), 7);
  EXPECT_EQ(repaired.to_string(), "110");
  // With C = 4 the same drops continue past item 2.
  auto tight = inst;
  tight.capacity = 4;
  EXPECT_EQ(KnapsackObjective(tight).evaluate(BitVector::from_string("111"), repaired), 3);
  EXPECT_EQ(repaired.to_string(), "100");
  EXPECT_THROW(evaluate(inst, BitVector(2)), DomainError);
}

TEST(Evaluate, RepairTiesDropLowerIndexFirst) {
  KnapsackInstance inst;
  inst.weights = {2, 2, 2};
  inst.profits = {2, 2, 2};
  inst.capacity = 4;
  BitVector repaired;
  EXPECT_EQ(KnapsackObjective(inst).evaluate(BitVector::from_string("111"), repaired), 4);
  EXPECT_EQ(repaired.to_string(), "011");
}

TEST(Evaluate, BoundedByOptimumAndIdentityWhenFeasible) {
  Xoshiro256 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = generate(InstanceType::UCI, 40, 1000, 0.5, rng());
    const KnapsackObjective objective(inst);
    const auto optimum = dp_optimal(inst).profit;
    for (int s = 0; s < 50; ++s) {
      BitVector x(inst.size());
      for (std::size_t i = 0; i < inst.size(); ++i) x.set(i, uniform01(rng) < 0.5);
      BitVector repaired;
      const auto fitness = objective.evaluate(x, repaired);
      ASSERT_LE(fitness, optimum);
      ASSERT_LE(total_weight(inst, repaired), inst.capacity);
      ASSERT_EQ(total_profit(inst, repaired), fitness);
      if (total_weight(inst, x) <= inst.capacity) {
        ASSERT_EQ(fitness, total_profit(inst, x));
        ASSERT_EQ(repaired, x);
      }
    }
  }
}

TEST(InstanceFile, RoundTrip) {
  const auto inst = generate(InstanceType::WCI, 30, 1000, 0.5, 4);
  std::stringstream buf;
  write_instance(buf, inst);
  const auto back = read_instance(buf);
  EXPECT_EQ(back.weights, inst.weights);
  EXPECT_EQ(back.profits, inst.profits);
  EXPECT_EQ(back.capacity, inst.capacity);
  EXPECT_EQ(back.type, InstanceType::WCI);
}

TEST(InstanceFile, ReportsOffendingLine) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
  };
  EXPECT_NO_THROW(parse("3 5 EXTERNAL\n2 3\n3 4\n4 5\n"));
  try {
    parse("3 5 UCI\n2 3\n0 4\n4 5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.key(), "weight");
  }
  EXPECT_THROW(parse("3 5 UCI\n2 3\n"), ParseError);
  EXPECT_THROW(parse("2 5 XYZ\n2 3\n3 4\n"), ParseError);
  EXPECT_THROW(parse("1 5 UCI\n2 3\n9 9\n"), ParseError);
  EXPECT_THROW(parse("1 5 UCI\n2 x\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

}  // namespace
}  // namespace vbpso
