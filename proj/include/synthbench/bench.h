// Copyright 2026 The synthbench Authors.
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

#ifndef SYNTHBENCH_BENCH_H_
#define SYNTHBENCH_BENCH_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "synthbench/generators.h"
#include "synthbench/report.h"
#include "synthbench/rng.h"
#include "synthbench/tabular.h"

namespace synthbench {

// Seed used whenever none is given.
inline constexpr std::uint64_t kDefaultSeed = 42;

struct MetricSelection {
  bool fidelity = true;
  bool synthesis = true;
  bool privacy = true;
  bool graph = true;

  bool operator==(const MetricSelection&) const = default;
};

// Comma-separated subset of fidelity, synthesis, privacy, graph; "all"
// selects every family.
MetricSelection ParseMetricSelection(std::string_view text);
std::string ToString(const MetricSelection& selection);

struct MetricOptions {
  MetricSelection metrics;
  std::string graph_source;  // graph metrics need both columns
  std::string graph_target;
  double margin_fraction = 0.01;
  double percentile = 5.0;
  bool parallel = false;  // score metric families concurrently
  // When graph metrics are selected but no columns are configured, report a
  // null netsimile instead of leaving it out.
  bool null_graph_when_unconfigured = false;
};

// Computes the selected metric families of `synth` against `real` and
// stores them, with their details, into `report`.
void ScoreSynthetic(const DataTable& real, const DataTable& synth,
                    const MetricOptions& options, MetricReport& report);

struct PluginOptions {
  std::chrono::milliseconds timeout = std::chrono::hours(2);
  std::filesystem::path temp_parent;  // empty: SYNTHBENCH_TMPDIR or system
};

// Two hours, or SYNTHBENCH_PLUGIN_TIMEOUT seconds when set.
std::chrono::milliseconds DefaultPluginTimeout();

struct TimedOutput {
  DataTable table;
  double seconds = 0.0;
  std::string captured_stderr;
};

// Trains and samples `spec` on `train`, timing the whole span. Builtins run
// in process. Plugins run as
//   <command> --train <csv> --n <count> --out <csv> --seed <u64>
//             [--hparams <json file>]
// and are timed over the subprocess lifetime. The output must carry the
// training schema and exactly `n` complete rows.
TimedOutput TimedGenerate(const GeneratorSpec& spec, const DataTable& train,
                          std::size_t n, const PluginOptions& options = {});

struct BenchGenerator {
  GeneratorSpec spec;  // spec.hyperparams hold fixed values
  nlohmann::json grid = nlohmann::json::object();  // key -> candidate values
};

struct BenchConfig {
  std::size_t runs = 30;
  std::size_t train_size = 100000;
  std::size_t gen_size = 10000;
  std::uint64_t seed = kDefaultSeed;
  MetricOptions metrics;
  bool holdout = false;
  PluginOptions plugin;
  std::vector<BenchGenerator> generators;
};

// Reads the keys runs, train_size, gen_size, seed, metrics, graph_source,
// graph_target, margin, percentile, holdout, parallel_metrics, timeout
// (seconds), temp_dir and generators. Each generator entry holds
// "generator" (bootstrap|marginal|copula|plugin:<command>) and optionally
// "name", "hparams", "grid" and "grid_file" (relative to `base_dir`). Other
// keys are left to the caller.
BenchConfig BenchConfigFromJson(const nlohmann::json& json,
                                const std::filesystem::path& base_dir = {});
nlohmann::json BenchConfigToJson(const BenchConfig& config);
void ValidateBenchConfig(const BenchConfig& config);

// FNV-1a of the canonical JSON form, as 16 hex digits.
std::string ConfigHash(const BenchConfig& config);

// First k entries of a seeded Fisher-Yates shuffle of [0, n).
std::vector<std::size_t> ShuffledPrefix(std::size_t n, std::size_t k,
                                        std::uint64_t seed);

// min(k, row_count) rows drawn uniformly without replacement.
DataTable Subset(const DataTable& real, std::size_t k, std::uint64_t seed);

// One uniform draw per grid key, applied over the fixed hyperparameters.
nlohmann::json DrawHyperparameters(const nlohmann::json& fixed,
                                   const nlohmann::json& grid, Rng& rng);

// Per generator: `runs` timed train-and-generate runs on a train_size subset,
// each with its own hyperparameter draw and seed; efficiency is their mean
// duration; metrics are scored on the final run's output against the
// training subset (or a disjoint holdout). Failures are recorded per
// generator.
std::vector<MetricReport> RunBenchmark(const DataTable& real,
                                       std::string_view dataset_id,
                                       const BenchConfig& config);

std::string UtcTimestamp();

}  // namespace synthbench

#endif  // SYNTHBENCH_BENCH_H_
