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

// Acceptance driver. Prints one PASS/FAIL line per evaluated criterion and
// exits non-zero if any failed.
//
//   acceptance [--criteria 1,2,...]    (default: all ten)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vbpso/transfer_oracle.hpp"
#include "vbpso/vbpso.hpp"

namespace {

using namespace vbpso;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(std::string note) {
    pass = false;
    if (notes.size() < 12) notes.push_back(std::move(note));
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// {±10^k : k = -6..6} ∪ {±0.5, ±1, ±2, ±5}
std::vector<double> velocity_grid() {
  std::vector<double> grid;
  for (int k = -6; k <= 6; ++k) grid.push_back(std::pow(10.0, k));
  for (double v : {0.5, 1.0, 2.0, 5.0}) grid.push_back(v);
  const std::size_t positive = grid.size();
  for (std::size_t i = 0; i < positive; ++i) grid.push_back(-grid[i]);
  return grid;
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), std::numeric_limits<double>::min());
}

std::string point(TransferKind kind, double v) { return std::string(to_string(kind)) + " v=" + fmt(v); }

Outcome correction_identity() {
  Outcome out;
  for (auto kind : kAllTransferKinds) {
    for (double v : velocity_grid()) {
      const double gap = std::fabs(sigm(kind, correct(kind, v)) - (1.0 - sigm(kind, v)));
      if (!(gap <= 1e-10)) out.fail(point(kind, v) + " gap " + fmt(gap));
    }
  }
  return out;
}

Outcome oracle_agreement() {
  Outcome out;
  for (auto kind : kAllTransferKinds) {
    for (double v : velocity_grid()) {
      try {
        const double err = rel_err(correct(kind, v), oracle::correct_oracle(kind, v));
        if (!(err <= 1e-8)) out.fail(point(kind, v) + " rel err " + fmt(err));
      } catch (const oracle::OracleError& e) {
        out.fail(point(kind, v) + " oracle: " + e.what());
      }
    }
  }
  return out;
}

Outcome involution() {
  Outcome out;
  for (auto kind : kAllTransferKinds) {
    for (double v : velocity_grid()) {
      const double back = correct(kind, correct(kind, v));
      const double err = rel_err(back, v);
      if (!(err <= 1e-8)) out.fail(point(kind, v) + " -> " + fmt(back));
    }
  }
  return out;
}

Outcome exact_solver() {
  Outcome out;
  Xoshiro256 rng(20260401);
  const InstanceType types[] = {InstanceType::UCI, InstanceType::WCI, InstanceType::SCI};
  for (int trial = 0; trial < 200; ++trial) {
    const auto type = types[trial % 3];
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 20));
    const std::int64_t r = 10 * uniform_int(rng, 1, 100);
    const double s = 0.1 + 0.8 * uniform01(rng);
    const auto inst = generate(type, n, r, s, rng());
    const auto dp = dp_optimal(inst);
    const auto brute = brute_force_optimal(inst);
    if (dp.profit != brute || total_profit(inst, dp.selection) != dp.profit ||
        total_weight(inst, dp.selection) > inst.capacity) {
      out.fail("trial " + std::to_string(trial) + ": dp " + std::to_string(dp.profit) +
               " brute " + std::to_string(brute));
    }
  }
  return out;
}

RunTrace random_trace(Xoshiro256& rng, std::size_t particles, std::size_t dims,
                      std::size_t steps) {
  RunTrace trace;
  trace.swarm_size = particles;
  trace.dimensions = dims;
  const double p = 1.5 / static_cast<double>(dims);
  for (std::size_t k = 0; k <= steps; ++k) {
    TraceRecord rec;
    rec.iteration = k;
    rec.flips.assign(particles, 0);
    for (std::size_t i = 0; i < particles; ++i) {
      BitVector x = k == 0 ? BitVector(dims) : trace.records[k - 1].positions[i];
      for (std::size_t d = 0; d < dims; ++d) {
        if (uniform01(rng) < (k == 0 ? 0.5 : p)) {
          x.flip(d);
          if (k > 0) ++rec.flips[i];
        }
      }
      rec.positions.push_back(std::move(x));
    }
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

std::size_t bitwise_distance(const BitVector& a, const BitVector& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

Outcome metric_oracle() {
  Outcome out;
  Xoshiro256 rng(77);
  for (int t = 0; t < 50; ++t) {
    const auto dims = static_cast<std::size_t>(uniform_int(rng, 1, 64));
    const auto trace = random_trace(rng, 5, dims, 200);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t k = 1; k <= 200; ++k) {
        std::size_t best = dims + 1;
        for (std::size_t r = 0; r < k; ++r) {
          best = std::min(best, bitwise_distance(trace.position(k, i), trace.position(r, i)));
        }
        if (dist_eff_iteration(trace, i, k) != best) {
          out.fail("trace " + std::to_string(t) + " particle " + std::to_string(i) + " k=" +
                   std::to_string(k));
        }
      }
    }
    for (int s = 0; s < 10; ++s) {
      const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 199));
      const auto split = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(m), 199));
      const auto n = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(split) + 1, 200));
      if (pujv(trace, m, n) != pujv(trace, m, split) + pujv(trace, split + 1, n)) {
        out.fail("additivity trace " + std::to_string(t) + " [" + std::to_string(m) + "," +
                 std::to_string(split) + "," + std::to_string(n) + "]");
      }
    }
  }
  return out;
}

Variant variant(TransferKind kind, bool correction, const char* w) {
  Variant v;
  v.kind = kind;
  v.correction = correction;
  v.w = WSchedule::parse(w);
  if (!correction) v.vmax = 5.0;
  return v;
}

// (uncorrected, corrected) pairs at their best schedules.
using Pairs = std::vector<std::pair<Variant, Variant>>;

const Pairs kD100Pairs = {
    {variant(TransferKind::VT1, false, "0.6"), variant(TransferKind::VT1, true, "1.0")},
    {variant(TransferKind::VT2, false, "1.0-0.4"), variant(TransferKind::VT2, true, "1.0")},
    {variant(TransferKind::VT3, false, "1.0-0.4"), variant(TransferKind::VT3, true, "1.2-0.99")},
    {variant(TransferKind::VT4, false, "1.0-0.4"), variant(TransferKind::VT4, true, "1.2-0.99")},
};

const Pairs kD500Pairs = {
    {variant(TransferKind::VT1, false, "0.6"), variant(TransferKind::VT1, true, "1.0-0.99")},
    {variant(TransferKind::VT2, false, "0.9-0.4"), variant(TransferKind::VT2, true, "1.0-0.99")},
    {variant(TransferKind::VT3, false, "0.6"), variant(TransferKind::VT3, true, "1.1-0.99")},
    {variant(TransferKind::VT4, false, "0.9-0.4"), variant(TransferKind::VT4, true, "1.1-0.99")},
};

ExperimentSpec uci_spec(std::size_t dims, const Pairs& pairs, const fs::path& dir) {
  ExperimentSpec spec;
  spec.generate = GenerateParams{InstanceType::UCI, dims, 1000, 0.5, 42};
  spec.swarm_size = 20;
  spec.c1 = spec.c2 = 2.0;
  spec.iterations = 1000;
  spec.repetitions = 20;
  spec.base_seed = 0;
  spec.output_dir = dir;
  spec.write_traces = false;
  for (const auto& [plain, corrected] : pairs) {
    spec.variants.push_back(plain);
    spec.variants.push_back(corrected);
  }
  return spec;
}

const VariantResult& find(const ExperimentResult& result, const Variant& v) {
  for (const auto& agg : result.variants) {
    if (agg.variant == v) return agg;
  }
  throw std::logic_error("variant missing from result");
}

void describe(const ExperimentResult& result) {
  std::cout << "  optimum " << result.optimum << '\n';
  for (const auto& v : result.variants) {
    std::cout << "  " << v.variant.label() << " ratio " << fmt(v.ratio) << " first_discovery "
              << fmt(v.mean_first_discovery_round) << " pujv " << fmt(v.mean_pujv) << '\n';
  }
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vbpso acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criteria", selected, "Criteria to evaluate (default all)")
      ->delimiter(',')
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::set<int> want(selected.begin(), selected.end());

  bool all_pass = true;
  auto report = [&](int id, const std::string& title, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << '\n';
    for (const auto& note : o.notes) std::cout << "  " << note << '\n';
    all_pass = all_pass && o.pass;
  };

  if (want.count(1)) report(1, "correction identity on the velocity grid", correction_identity());
  if (want.count(2)) report(2, "closed-form correction matches bisection oracle", oracle_agreement());
  if (want.count(3)) report(3, "correction is an involution on the velocity grid", involution());
  if (want.count(4)) report(4, "dp_optimal equals brute_force_optimal on 200 instances", exact_solver());
  if (want.count(5)) report(5, "Dist_eff matches brute-force scan; PUJV additive", metric_oracle());

  const bool d100 = want.count(6) || want.count(8) || want.count(9) || want.count(10);
  std::optional<ExperimentResult> d100_result;
  if (d100) {
    d100_result = run_experiment(uci_spec(100, kD100Pairs, "acceptance_d100_a"), {0, true});
    describe(*d100_result);
  }

  if (want.count(6)) {
    Outcome o;
    for (const auto& [plain, corrected] : kD100Pairs) {
      const auto& p = find(*d100_result, plain);
      const auto& c = find(*d100_result, corrected);
      if (!(c.ratio >= 0.985)) o.fail(c.variant.label() + " ratio " + fmt(c.ratio) + " < 0.985");
      if (!(p.ratio < c.ratio)) {
        o.fail(p.variant.label() + " ratio " + fmt(p.ratio) + " not below " + fmt(c.ratio));
      }
    }
    report(6, "UCI d=100 corrected ratios >= 0.985 and above uncorrected", o);
  }

  if (want.count(7)) {
    const auto result = run_experiment(uci_spec(500, kD500Pairs, "acceptance_scaling"), {0, true});
    describe(result);
    Outcome o;
    for (const auto& [plain, corrected] : kD500Pairs) {
      const auto& p = find(result, plain);
      const auto& c = find(result, corrected);
      if (!(c.ratio >= 0.97)) o.fail(c.variant.label() + " ratio " + fmt(c.ratio) + " < 0.97");
      const double gap = c.ratio - p.ratio;
      if (!(gap >= 0.04)) o.fail(c.variant.label() + " gap " + fmt(gap) + " < 0.04");
    }
    report(7, "UCI d=500 corrected ratios >= 0.97 with gap >= 4 points", o);
  }

  if (want.count(8)) {
    Outcome o;
    for (const auto& [plain, corrected] : kD100Pairs) {
      const auto& p = find(*d100_result, plain);
      const auto& c = find(*d100_result, corrected);
      if (!(c.mean_pujv < p.mean_pujv)) {
        o.fail(c.variant.label() + " pujv " + fmt(c.mean_pujv) + " not below " + fmt(p.mean_pujv));
      }
    }
    report(8, "corrected variants have lower mean PUJV", o);
  }

  if (want.count(9)) {
    Outcome o;
    const auto& p = find(*d100_result, kD100Pairs[1].first);
    const auto& c = find(*d100_result, kD100Pairs[1].second);
    if (!(c.mean_first_discovery_round < p.mean_first_discovery_round)) {
      o.fail(fmt(c.mean_first_discovery_round) + " not below " +
             fmt(p.mean_first_discovery_round));
    }
    report(9, "VC2 first discovery earlier than VT2", o);
  }

  if (want.count(10)) {
    run_experiment(uci_spec(100, kD100Pairs, "acceptance_d100_b"), {0, true});
    Outcome o;
    const auto a = slurp(fs::path("acceptance_d100_a") / "aggregate.csv");
    const auto b = slurp(fs::path("acceptance_d100_b") / "aggregate.csv");
    if (a.empty() || a != b) o.fail("aggregate.csv differs between identical runs");
    report(10, "repeated pipeline yields byte-identical aggregate.csv", o);
  }

  return all_pass ? 0 : 1;
}
