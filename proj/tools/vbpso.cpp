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

// vbpso: batch command line for instance generation, exact solving,
// experiments, trace metrics and reports.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vbpso/vbpso.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vbpso::IoError("cannot write " + path.string());
  out << text;
}

int cmd_gen(const std::string& type_name, std::size_t n, std::int64_t r, double s,
            std::uint64_t seed, const std::string& out_path) {
  const auto type = vbpso::parse_instance_type(type_name);
  if (!type || *type == vbpso::InstanceType::EXTERNAL) {
    throw UsageError("--type must be uci, wci or sci");
  }
  const auto inst = vbpso::generate(*type, n, r, s, seed);
  if (out_path.empty() || out_path == "-") {
    vbpso::write_instance(std::cout, inst);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw vbpso::IoError("cannot write " + out_path);
    vbpso::write_instance(out, inst);
  }
  return 0;
}

int cmd_solve(const std::string& instance_path, std::string out_path) {
  const auto inst = vbpso::load_instance(instance_path);
  const auto solution = vbpso::dp_optimal(inst);
  std::cout << solution.profit << '\n';
  if (out_path.empty()) out_path = instance_path + ".solution";
  write_text(out_path, "profit " + std::to_string(solution.profit) + "\n" +
                           solution.selection.to_string() + "\n");
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& output_dir, std::size_t jobs) {
  vbpso::ExperimentSpec spec = vbpso::load_config(config_path);
  if (!output_dir.empty()) spec.output_dir = output_dir;
  const auto result = vbpso::run_experiment(spec, {jobs, true});
  std::cout << "optimum " << result.optimum << '\n';
  for (const auto& v : result.variants) {
    std::cout << v.variant.label() << " ratio " << vbpso::format_real(v.ratio)
              << " mean_best " << vbpso::format_real(v.mean_best_profit) << '\n';
  }
  std::cout << "results written to " << spec.output_dir.string() << '\n';
  return 0;
}

int cmd_metrics(const std::string& trace_path, std::optional<std::size_t> from,
                std::optional<std::size_t> to, const std::string& out_dir) {
  std::ifstream in(trace_path);
  if (!in) throw vbpso::IoError("cannot open trace " + trace_path);
  const auto trace = vbpso::read_trace(in);
  if (trace.iterations() == 0) throw UsageError("trace has no iterations to analyse");
  const std::size_t first = from.value_or(1);
  const std::size_t last = to.value_or(trace.iterations());
  if (first < 1 || first > last || last > trace.iterations()) {
    throw UsageError("range [" + std::to_string(first) + ", " + std::to_string(last) +
                     "] is outside [1, " + std::to_string(trace.iterations()) + "]");
  }

  const auto metrics = vbpso::compute_metrics(trace);
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  const auto stem = std::filesystem::path(trace_path).stem().string();
  {
    std::ofstream out(dir / (stem + "_dist.csv"), std::ios::binary);
    if (!out) throw vbpso::IoError("cannot write metrics under " + dir.string());
    out << "iteration,particle,dist,dist_eff\n";
    for (std::size_t k = first; k <= last; ++k) {
      for (std::size_t i = 0; i < trace.swarm_size; ++i) {
        const auto& s = metrics.per_particle[i];
        out << k << ',' << i << ',' << s.dist[k] << ',' << s.dist_eff[k] << '\n';
      }
    }
  }
  std::uint64_t range_pujv = 0;
  {
    std::ofstream out(dir / (stem + "_metrics.csv"), std::ios::binary);
    if (!out) throw vbpso::IoError("cannot write metrics under " + dir.string());
    out << "iteration,mean_dist,mean_dist_eff,cum_pujv\n";
    for (std::size_t k = first; k <= last; ++k) {
      range_pujv = metrics.cum_pujv[k] - metrics.cum_pujv[first - 1];
      out << k << ',' << vbpso::format_real(metrics.mean_dist[k]) << ','
          << vbpso::format_real(metrics.mean_dist_eff[k]) << ',' << range_pujv << '\n';
    }
  }
  std::cout << "pujv " << first << ' ' << last << ' ' << range_pujv << '\n';
  return 0;
}

int cmd_report(const std::string& results_dir, const std::string& out_path) {
  const auto table = vbpso::build_report(results_dir);
  std::cout << table;
  write_text(out_path.empty() ? std::filesystem::path(results_dir) / "report.csv"
                              : std::filesystem::path(out_path),
             table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"V-shaped binary PSO with velocity legacy correction"};
  app.require_subcommand(1);

  std::string type_name;
  std::size_t n = 100;
  std::int64_t r = 1000;
  double s = 0.5;
  std::uint64_t seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a knapsack instance");
  gen->add_option("--type", type_name, "uci, wci or sci")->required();
  gen->add_option("--n", n, "Item count")->check(CLI::PositiveNumber);
  gen->add_option("--r", r, "Weight range R");
  gen->add_option("--s", s, "Capacity fraction S");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output file (stdout if omitted)");

  std::string instance_path;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve", "Exact optimum by dynamic programming");
  solve->add_option("--instance", instance_path, "Instance file")->required();
  solve->add_option("--out", solve_out, "Selection file (default <instance>.solution)");

  std::string config_path;
  std::string run_dir;
  std::size_t jobs = 0;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--output-dir", run_dir, "Override output.dir");
  run->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  std::string trace_path;
  std::optional<std::size_t> from;
  std::optional<std::size_t> to;
  std::string metrics_dir;
  auto* metrics = app.add_subcommand("metrics", "Dist / Dist_eff / PUJV of a trace");
  metrics->add_option("--trace", trace_path, "Trace file")->required();
  metrics->add_option("--from", from, "First iteration (default 1)");
  metrics->add_option("--to", to, "Last iteration (default: last)");
  metrics->add_option("--out-dir", metrics_dir, "Directory for metric CSVs (default .)");

  std::string results_dir;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Consolidated table from a results directory");
  report->add_option("--results-dir", results_dir, "Directory written by 'run'")->required();
  report->add_option("--out", report_out, "Report CSV (default <results-dir>/report.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cerr, std::cerr);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen) return cmd_gen(type_name, n, r, s, seed, gen_out);
    if (*solve) return cmd_solve(instance_path, solve_out);
    if (*run) return cmd_run(config_path, run_dir, jobs);
    if (*metrics) return cmd_metrics(trace_path, from, to, metrics_dir);
    if (*report) return cmd_report(results_dir, report_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const vbpso::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const vbpso::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
