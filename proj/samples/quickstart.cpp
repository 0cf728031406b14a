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

// Solves one generated knapsack with plain and velocity-corrected V-shaped
// BPSO and compares both with the exact optimum.

#include <iostream>

#include "vbpso/vbpso.hpp"

int main() {
  using namespace vbpso;
  const auto inst = generate(InstanceType::UCI, 100, 1000, 0.5, 42);
  const auto optimum = dp_optimal(inst).profit;
  const KnapsackObjective objective(inst);

  RunConfig plain;
  plain.kind = TransferKind::VT2;
  plain.w = {1.0, 0.4};
  plain.dimensions = inst.size();
  plain.seed = 1;

  RunConfig corrected = plain;
  corrected.correction = true;
  corrected.vmax.reset();  // the correction replaces velocity clamping
  corrected.w = WSchedule::constant(1.0);

  std::cout << "optimum " << optimum << '\n';
  for (const auto* config : {&plain, &corrected}) {
    const auto trace = run(*config, objective);
    const auto metrics = compute_metrics(trace);
    std::cout << (config->correction ? "corrected " : "plain     ") << trace.final_gbest()
              << " (ratio " << trace.final_gbest() / static_cast<double>(optimum)
              << ", pujv " << metrics.total_pujv() << ")\n";
  }
}
