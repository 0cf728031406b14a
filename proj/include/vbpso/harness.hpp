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

// Experiment orchestration: config files, repeated runs over a variant grid,
// aggregation, and CSV output.
//
// Config file: `key = value` lines, `#` starts a comment, values may be
// double-quoted. Keys:
//   instance.type | instance.n | instance.r | instance.s | instance.seed
//   instance.path                      (instead of the generation keys)
//   swarm.size  swarm.c1  swarm.c2
//   run.iterations  run.repetitions  run.base_seed
//   variants        kind,correction,w,vmax tuples separated by ';' (repeatable)
//   output.dir  output.traces

#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "vbpso/engine.hpp"
#include "vbpso/errors.hpp"
#include "vbpso/knapsack.hpp"
#include "vbpso/metrics.hpp"
#include "vbpso/random.hpp"
#include "vbpso/trace_io.hpp"
#include "vbpso/transfer.hpp"

namespace vbpso {

struct Variant {
  TransferKind kind = TransferKind::VT1;
  bool correction = false;
  WSchedule w = WSchedule::constant(1.0);
  std::optional<double> vmax;

  // VT<k>_w<schedule>_vmax<v> without correction, VC<k>_w<schedule> with.
  std::string label() const {
    std::string out = correction ? "VC" : "VT";
    out += static_cast<char>('1' + static_cast<int>(kind));
    out += "_w" + to_string(w);
    if (vmax) out += "_vmax" + format_real(*vmax);
    return out;
  }

  friend bool operator==(const Variant&, const Variant&) = default;
};

struct GenerateParams {
  InstanceType type = InstanceType::UCI;
  std::size_t n = 100;
  std::int64_t r = 1000;
  double s = 0.5;
  std::uint64_t seed = 0;
};

struct ExperimentSpec {
  std::optional<GenerateParams> generate;
  std::optional<std::filesystem::path> instance_path;
  std::vector<Variant> variants;
  std::size_t swarm_size = 20;
  double c1 = 2.0;
  double c2 = 2.0;
  std::size_t iterations = 1000;
  std::size_t repetitions = 20;
  std::uint64_t base_seed = 0;
  std::filesystem::path output_dir = "results";
  bool write_traces = true;

  RunConfig run_config(std::size_t variant, std::size_t repetition, std::size_t dims) const {
    const Variant& v = variants.at(variant);
    RunConfig config;
    config.kind = v.kind;
    config.correction = v.correction;
    config.w = v.w;
    config.vmax = v.vmax;
    config.c1 = c1;
    config.c2 = c2;
    config.swarm_size = swarm_size;
    config.dimensions = dims;
    config.max_iterations = iterations;
    config.seed = derive_seed(base_seed, variant, repetition);
    return config;
  }

  void validate() const {
    if (generate.has_value() == instance_path.has_value()) {
      throw ConfigError("exactly one of instance generation keys or instance.path is required");
    }
    if (variants.empty()) throw ConfigError("variant list is empty");
    if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
    for (std::size_t v = 0; v < variants.size(); ++v) run_config(v, 0, 1).validate();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool parse_switch(std::string_view text, const std::string& key, std::size_t line) {
  std::string lower(text);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "on" || lower == "true" || lower == "yes" || lower == "1") return true;
  if (lower == "off" || lower == "false" || lower == "no" || lower == "0") return false;
  throw ParseError(key, line, "expected on/off, got '" + std::string(text) + "'");
}

inline Variant parse_variant(std::string_view tuple, std::size_t line) {
  const auto fields = split_view(tuple, ',');
  if (fields.size() != 4) {
    throw ParseError("variants", line,
                     "expected kind,correction,w,vmax but got '" + std::string(tuple) + "'");
  }
  Variant v;
  const auto kind = parse_transfer_kind(trim(fields[0]));
  if (!kind) {
    throw ParseError("variants", line, "unknown transfer kind '" + std::string(trim(fields[0])) + "'");
  }
  v.kind = *kind;
  v.correction = parse_switch(trim(fields[1]), "variants", line);
  try {
    v.w = WSchedule::parse(trim(fields[2]));
  } catch (const ConfigError& e) {
    throw ParseError("variants", line, e.what());
  }
  const auto vmax = trim(fields[3]);
  if (vmax == "none" || vmax == "-" || vmax.empty()) {
    v.vmax.reset();
  } else {
    v.vmax = parse_real(vmax, "variants", line);
  }
  return v;
}

}  // namespace detail

inline ExperimentSpec parse_config(std::string_view text) {
  ExperimentSpec spec;
  GenerateParams gen;
  bool any_generate = false;
  bool saw_type = false;
  std::set<std::string> seen;
  std::size_t variants_line = 0;

  std::size_t line = 0;
  for (auto raw : split_view(text, '\n')) {
    ++line;
    // Strip comments outside quotes.
    std::size_t cut = raw.size();
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    const auto body = detail::trim(raw.substr(0, cut));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("", line, "expected 'key = value'");
    const std::string key(detail::trim(body.substr(0, eq)));
    auto value = detail::trim(body.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key != "variants" && !seen.insert(key).second) {
      throw ParseError(key, line, "key given more than once");
    }

    try {
      if (key == "instance.type") {
        const auto type = parse_instance_type(value);
        if (!type || *type == InstanceType::EXTERNAL) {
          throw ParseError(key, line, "expected uci, wci or sci");
        }
        gen.type = *type;
        any_generate = saw_type = true;
      } else if (key == "instance.n") {
        gen.n = parse_integer<std::size_t>(value, key, line);
        any_generate = true;
      } else if (key == "instance.r") {
        gen.r = parse_integer<std::int64_t>(value, key, line);
        any_generate = true;
      } else if (key == "instance.s") {
        gen.s = parse_real(value, key, line);
        any_generate = true;
      } else if (key == "instance.seed") {
        gen.seed = parse_integer<std::uint64_t>(value, key, line);
        any_generate = true;
      } else if (key == "instance.path") {
        if (value.empty()) throw ParseError(key, line, "empty path");
        spec.instance_path = std::filesystem::path(std::string(value));
      } else if (key == "swarm.size") {
        spec.swarm_size = parse_integer<std::size_t>(value, key, line);
      } else if (key == "swarm.c1") {
        spec.c1 = parse_real(value, key, line);
      } else if (key == "swarm.c2") {
        spec.c2 = parse_real(value, key, line);
      } else if (key == "run.iterations") {
        spec.iterations = parse_integer<std::size_t>(value, key, line);
      } else if (key == "run.repetitions") {
        spec.repetitions = parse_integer<std::size_t>(value, key, line);
        if (spec.repetitions < 1) throw ParseError(key, line, "must be at least 1");
      } else if (key == "run.base_seed") {
        spec.base_seed = parse_integer<std::uint64_t>(value, key, line);
      } else if (key == "variants") {
        variants_line = line;
        for (auto tuple : split_view(value, ';')) {
          tuple = detail::trim(tuple);
          if (tuple.empty()) continue;
          Variant v = detail::parse_variant(tuple, line);
          if (std::find(spec.variants.begin(), spec.variants.end(), v) != spec.variants.end()) {
            throw ParseError(key, line, "duplicate variant " + v.label());
          }
          try {
            RunConfig probe;
            probe.kind = v.kind;
            probe.correction = v.correction;
            probe.w = v.w;
            probe.vmax = v.vmax;
            probe.dimensions = 1;
            probe.validate();
          } catch (const ConfigError& e) {
            throw ParseError(key, line, e.what());
          }
          spec.variants.push_back(v);
        }
      } else if (key == "output.dir") {
        if (value.empty()) throw ParseError(key, line, "empty path");
        spec.output_dir = std::filesystem::path(std::string(value));
      } else if (key == "output.traces") {
        spec.write_traces = detail::parse_switch(value, key, line);
      } else {
        throw ParseError(key, line, "unknown key");
      }
    } catch (const ConfigError& e) {
      throw ParseError(key, line, e.what());
    }
  }

  if (any_generate) {
    if (!saw_type) throw ParseError("instance.type", 0, "required when generating an instance");
    spec.generate = gen;
  }
  if (spec.generate && spec.instance_path) {
    throw ParseError("instance.path", 0, "cannot be combined with instance generation keys");
  }
  if (!spec.generate && !spec.instance_path) {
    throw ParseError("instance.type", 0, "no instance given (instance.type or instance.path)");
  }
  if (spec.variants.empty()) throw ParseError("variants", variants_line, "variant list is empty");
  if (spec.swarm_size < 1) throw ParseError("swarm.size", 0, "must be positive");
  if (!(spec.c1 >= 0.0 && spec.c2 >= 0.0)) throw ParseError("swarm.c1", 0, "must be non-negative");
  if (spec.generate) {
    try {
      // Surface generation errors (R, S, SCI divisibility) at parse time.
      (void)vbpso::generate(gen.type, 1, gen.r, gen.s, 0);
      if (gen.n < 1) throw ConfigError("n must be at least 1");
    } catch (const ConfigError& e) {
      throw ParseError("instance", 0, e.what());
    }
  }
  return spec;
}

inline ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

struct RunSummary {
  std::size_t variant = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  double best_profit = 0.0;
  double ratio = 0.0;
  std::size_t convergence_round = 0;
  std::size_t first_discovery_round = 0;
  std::uint64_t pujv = 0;
};

struct VariantResult {
  Variant variant;
  std::vector<RunSummary> runs;
  double mean_best_profit = 0.0;
  double ratio = 0.0;
  double mean_convergence_round = 0.0;
  double mean_first_discovery_round = 0.0;
  double mean_pujv = 0.0;
  // Per-iteration means over repetitions (index = iteration, 0..K).
  std::vector<double> mean_gbest;
  std::vector<double> mean_dist;
  std::vector<double> mean_dist_eff;
  std::vector<double> mean_cum_pujv;
};

struct ExperimentResult {
  KnapsackInstance instance;
  std::int64_t optimum = 0;
  std::vector<VariantResult> variants;
};

struct RunOptions {
  std::size_t jobs = 0;        // 0: hardware concurrency
  bool write_outputs = true;
};

inline KnapsackInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance " + path.string());
  return read_instance(in);
}

inline KnapsackInstance obtain_instance(const ExperimentSpec& spec) {
  if (spec.instance_path) return load_instance(*spec.instance_path);
  const auto& g = *spec.generate;
  return generate(g.type, g.n, g.r, g.s, g.seed);
}

namespace detail {

struct RunOutcome {
  RunSummary summary;
  std::vector<double> gbest;
  std::vector<double> mean_dist;
  std::vector<double> mean_dist_eff;
  std::vector<std::uint64_t> cum_pujv;
};

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

template <class Task>
void parallel_for(std::size_t count, std::size_t jobs, Task task) {
  if (jobs == 0) jobs = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

inline void write_results(const ExperimentSpec& spec, const ExperimentResult& result);

// Runs every (variant, repetition) pair against one instance and aggregates.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, RunOptions options = {}) {
  spec.validate();
  ExperimentResult result;
  result.instance = obtain_instance(spec);
  result.optimum = dp_optimal(result.instance).profit;
  const KnapsackObjective objective(result.instance);
  const std::size_t dims = result.instance.size();
  if (dims == 0) throw ConfigError("instance has no items");

  if (options.write_outputs) {
    std::filesystem::create_directories(spec.output_dir);
    if (spec.write_traces) std::filesystem::create_directories(spec.output_dir / "traces");
  }

  const std::size_t reps = spec.repetitions;
  std::vector<detail::RunOutcome> outcomes(spec.variants.size() * reps);
  detail::parallel_for(outcomes.size(), options.jobs, [&](std::size_t task) {
    const std::size_t v = task / reps;
    const std::size_t r = task % reps;
    const RunConfig config = spec.run_config(v, r, dims);
    const RunTrace trace = run(config, objective);
    const TraceMetrics metrics = compute_metrics(trace);

    detail::RunOutcome& out = outcomes[task];
    out.summary.variant = v;
    out.summary.repetition = r;
    out.summary.seed = config.seed;
    out.summary.best_profit = trace.final_gbest();
    out.summary.ratio = result.optimum > 0
                            ? out.summary.best_profit / static_cast<double>(result.optimum)
                            : 1.0;
    out.summary.convergence_round = convergence_round(trace);
    out.summary.first_discovery_round = first_discovery_round(trace);
    out.summary.pujv = metrics.total_pujv();
    out.gbest.reserve(trace.records.size());
    for (const auto& rec : trace.records) out.gbest.push_back(rec.gbest_fitness);
    out.mean_dist = metrics.mean_dist;
    out.mean_dist_eff = metrics.mean_dist_eff;
    out.cum_pujv = metrics.cum_pujv;

    if (options.write_outputs && spec.write_traces) {
      auto file = detail::open_output(spec.output_dir / "traces" /
                                      (spec.variants[v].label() + "_rep" +
                                       std::to_string(r) + ".trace"));
      write_trace(file, trace);
    }
  });

  const auto steps = spec.iterations + 1;
  const auto n = static_cast<double>(reps);
  for (std::size_t v = 0; v < spec.variants.size(); ++v) {
    VariantResult agg;
    agg.variant = spec.variants[v];
    agg.mean_gbest.assign(steps, 0.0);
    agg.mean_dist.assign(steps, 0.0);
    agg.mean_dist_eff.assign(steps, 0.0);
    agg.mean_cum_pujv.assign(steps, 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& o = outcomes[v * reps + r];
      agg.runs.push_back(o.summary);
      agg.mean_best_profit += o.summary.best_profit;
      agg.mean_convergence_round += static_cast<double>(o.summary.convergence_round);
      agg.mean_first_discovery_round += static_cast<double>(o.summary.first_discovery_round);
      agg.mean_pujv += static_cast<double>(o.summary.pujv);
      for (std::size_t k = 0; k < steps; ++k) {
        agg.mean_gbest[k] += o.gbest[k];
        agg.mean_dist[k] += o.mean_dist[k];
        agg.mean_dist_eff[k] += o.mean_dist_eff[k];
        agg.mean_cum_pujv[k] += static_cast<double>(o.cum_pujv[k]);
      }
    }
    agg.mean_best_profit /= n;
    agg.mean_convergence_round /= n;
    agg.mean_first_discovery_round /= n;
    agg.mean_pujv /= n;
    for (std::size_t k = 0; k < steps; ++k) {
      agg.mean_gbest[k] /= n;
      agg.mean_dist[k] /= n;
      agg.mean_dist_eff[k] /= n;
      agg.mean_cum_pujv[k] /= n;
    }
    agg.ratio = result.optimum > 0 ? agg.mean_best_profit / static_cast<double>(result.optimum)
                                   : 1.0;
    result.variants.push_back(std::move(agg));
  }

  if (options.write_outputs) write_results(spec, result);
  return result;
}

inline constexpr std::string_view kRunsHeader =
    "variant,repetition,seed,best_profit,ratio,convergence_round,first_discovery_round,pujv";
inline constexpr std::string_view kAggregateHeader =
    "variant,kind,correction,w,vmax,repetitions,optimum,mean_best_profit,ratio,"
    "mean_convergence_round,mean_first_discovery_round,mean_pujv";
inline constexpr std::string_view kReportHeader =
    "variant,ratio,mean_convergence_round,mean_first_discovery_round,mean_pujv";

inline void write_results(const ExperimentSpec& spec, const ExperimentResult& result) {
  const auto& dir = spec.output_dir;
  std::filesystem::create_directories(dir);
  {
    auto out = detail::open_output(dir / "instance.txt");
    write_instance(out, result.instance);
  }
  {
    auto out = detail::open_output(dir / "runs.csv");
    out << kRunsHeader << '\n';
    for (const auto& agg : result.variants) {
      for (const auto& run : agg.runs) {
        out << agg.variant.label() << ',' << run.repetition << ',' << run.seed << ','
            << format_real(run.best_profit) << ',' << format_real(run.ratio) << ','
            << run.convergence_round << ',' << run.first_discovery_round << ',' << run.pujv
            << '\n';
      }
    }
  }
  {
    auto out = detail::open_output(dir / "aggregate.csv");
    out << kAggregateHeader << '\n';
    for (const auto& agg : result.variants) {
      const auto& v = agg.variant;
      out << v.label() << ',' << to_string(v.kind) << ',' << (v.correction ? "on" : "off")
          << ',' << to_string(v.w) << ',' << (v.vmax ? format_real(*v.vmax) : "none") << ','
          << agg.runs.size() << ',' << result.optimum << ','
          << format_real(agg.mean_best_profit) << ',' << format_real(agg.ratio) << ','
          << format_real(agg.mean_convergence_round) << ','
          << format_real(agg.mean_first_discovery_round) << ',' << format_real(agg.mean_pujv)
          << '\n';
    }
  }
  for (const auto& agg : result.variants) {
    const auto label = agg.variant.label();
    {
      auto out = detail::open_output(dir / ("curve_" + label + ".csv"));
      out << "iteration,mean_gbest\n";
      for (std::size_t k = 0; k < agg.mean_gbest.size(); ++k) {
        out << k << ',' << format_real(agg.mean_gbest[k]) << '\n';
      }
    }
    {
      auto out = detail::open_output(dir / ("metrics_" + label + ".csv"));
      out << "iteration,mean_dist,mean_dist_eff,cum_pujv\n";
      for (std::size_t k = 1; k < agg.mean_dist.size(); ++k) {
        out << k << ',' << format_real(agg.mean_dist[k]) << ','
            << format_real(agg.mean_dist_eff[k]) << ',' << format_real(agg.mean_cum_pujv[k])
            << '\n';
      }
    }
  }
}

// Reads a results directory's aggregate.csv and returns the consolidated
// variant x {ratio, convergence round, first discovery, PUJV} table as CSV.
inline std::string build_report(const std::filesystem::path& results_dir) {
  const auto path = results_dir / "aggregate.csv";
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kAggregateHeader) {
    throw ParseError("", 1, path.string() + " does not have the aggregate.csv header");
  }
  std::ostringstream out;
  out << kReportHeader << '\n';
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_view(line, ',');
    if (f.size() != 12) {
      throw ParseError("", lineno, path.string() + ": expected 12 columns");
    }
    out << f[0] << ',' << f[8] << ',' << f[9] << ',' << f[10] << ',' << f[11] << '\n';
  }
  return out.str();
}

}  // namespace vbpso
