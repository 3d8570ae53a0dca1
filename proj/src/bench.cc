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

#include "synthbench/bench.h"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <sstream>

#include "synthbench/error.h"
#include "synthbench/fidelity.h"
#include "synthbench/graph.h"
#include "synthbench/privacy.h"
#include "synthbench/subprocess.h"
#include "synthbench/synthesis.h"

namespace synthbench {
namespace {

using Clock = std::chrono::steady_clock;

std::string Trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T GetOr(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("config key '") + key +
                          "' has the wrong type");
  }
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " +
                          e.what());
  }
}

void CheckGrid(const nlohmann::json& grid, const std::string& name) {
  if (!grid.is_object()) {
    throw ValidationError("grid of '" + name + "' must be an object");
  }
  for (const auto& [key, values] : grid.items()) {
    if (!values.is_array() || values.empty()) {
      throw ValidationError("grid entry '" + key + "' of '" + name +
                            "' must be a non-empty array");
    }
  }
}

GraphDiagnostics ToDiagnostics(const GraphComparison& cmp) {
  GraphDiagnostics d;
  d.real = cmp.real;
  d.synthetic = cmp.synthetic;
  d.single_cluster = cmp.single_cluster;
  if (cmp.real_signature) {
    d.real_signature.emplace(cmp.real_signature->begin(),
                             cmp.real_signature->end());
  }
  if (cmp.synthetic_signature) {
    d.synthetic_signature.emplace(cmp.synthetic_signature->begin(),
                                  cmp.synthetic_signature->end());
  }
  return d;
}

}  // namespace

MetricSelection ParseMetricSelection(std::string_view text) {
  MetricSelection sel{false, false, false, false};
  std::size_t start = 0;
  bool any = false;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = Trimmed(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    if (item == "all") {
      sel = MetricSelection{};
    } else if (item == "fidelity") {
      sel.fidelity = true;
    } else if (item == "synthesis") {
      sel.synthesis = true;
    } else if (item == "privacy") {
      sel.privacy = true;
    } else if (item == "graph") {
      sel.graph = true;
    } else if (!item.empty()) {
      throw ValidationError("unknown metric family '" + item + "'");
    }
    any |= !item.empty();
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!any) throw ValidationError("no metric family selected");
  return sel;
}

std::string ToString(const MetricSelection& s) {
  std::string out;
  const auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(s.fidelity, "fidelity");
  add(s.synthesis, "synthesis");
  add(s.privacy, "privacy");
  add(s.graph, "graph");
  return out;
}

void ScoreSynthetic(const DataTable& real, const DataTable& synth,
                    const MetricOptions& options, MetricReport& report) {
  if (!(real.schema() == synth.schema())) {
    throw ValidationError("real and synthetic schemas differ");
  }
  const auto launch = options.parallel ? std::launch::async : std::launch::deferred;

  std::future<FidelityScores> fidelity;
  std::future<double> synthesis;
  std::future<PrivacyScores> privacy;
  std::future<GraphComparison> graph;
  const bool graph_configured =
      !options.graph_source.empty() && !options.graph_target.empty();

  if (options.metrics.fidelity) {
    fidelity = std::async(launch, [&] { return ComputeFidelity(real, synth); });
  }
  if (options.metrics.synthesis) {
    synthesis = std::async(launch, [&] {
      return SynthesisScore(real, synth, {options.margin_fraction});
    });
  }
  if (options.metrics.privacy) {
    privacy = std::async(launch, [&] {
      return ComputePrivacyScores(real, synth, FitNormalization(real),
                                  {options.percentile});
    });
  }
  if (options.metrics.graph && graph_configured) {
    graph = std::async(launch, [&] {
      return CompareGraphs(real, synth, options.graph_source,
                           options.graph_target);
    });
  }

  if (fidelity.valid()) {
    auto f = fidelity.get();
    report.column_fidelity = f.column_wise.mean;
    report.row_fidelity =
        NullableScore{f.row_wise.mean, f.row_wise.undefined_reason};
    report.details.per_column = std::move(f.column_wise.per_column);
    report.details.per_pair = std::move(f.row_wise.per_pair);
  }
  if (synthesis.valid()) report.synthesis = synthesis.get();
  if (privacy.valid()) {
    const auto p = privacy.get();
    report.dcr_p5 = p.dcr_p;
    report.nndr_p5 = p.nndr_p;
  }
  if (graph.valid()) {
    const auto g = graph.get();
    report.netsimile = NullableScore{g.distance, g.null_reason};
    report.details.graph = ToDiagnostics(g);
  } else if (options.metrics.graph && options.null_graph_when_unconfigured) {
    report.netsimile = NullableScore{std::nullopt, "graph columns not configured"};
  }
}

std::chrono::milliseconds DefaultPluginTimeout() {
  if (const char* env = std::getenv("SYNTHBENCH_PLUGIN_TIMEOUT"); env && *env) {
    if (auto v = ParseReal(env); v && *v > 0) {
      return std::chrono::milliseconds(static_cast<std::int64_t>(*v * 1000.0));
    }
    throw ValidationError("SYNTHBENCH_PLUGIN_TIMEOUT must be a positive number "
                          "of seconds");
  }
  return std::chrono::hours(2);
}

TimedOutput TimedGenerate(const GeneratorSpec& spec, const DataTable& train,
                          std::size_t n, const PluginOptions& options) {
  if (train.row_count() == 0) {
    throw ValidationError("cannot train on an empty table");
  }
  if (n == 0) throw ValidationError("row count must be at least 1");

  if (spec.kind != GeneratorKind::kPlugin) {
    const auto start = Clock::now();
    DataTable out = GenerateBuiltin(spec, train, n, spec.seed);
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (!(out.schema() == train.schema()) || out.row_count() != n) {
      throw GeneratorError(GeneratorErrorKind::kMalformedOutput,
                           "generator output does not match the training "
                           "schema");
    }
    return {std::move(out), seconds, {}};
  }

  TempDir scratch(options.temp_parent);
  const auto train_path = scratch.path() / "train.csv";
  const auto out_path = scratch.path() / "synthetic.csv";
  WriteTable(train, train_path);
  std::string command = spec.command + " --train " +
                        ShellQuote(train_path.string()) + " --n " +
                        std::to_string(n) + " --out " +
                        ShellQuote(out_path.string()) + " --seed " +
                        std::to_string(spec.seed);
  if (!spec.hyperparams.empty()) {
    const auto hp_path = scratch.path() / "hparams.json";
    std::ofstream hp(hp_path);
    hp << spec.hyperparams.dump(2) << "\n";
    if (!hp) throw IoError("cannot write '" + hp_path.string() + "'");
    command += " --hparams " + ShellQuote(hp_path.string());
  }

  const auto result = RunProcess(command, options.timeout, scratch.path());
  if (result.timed_out) {
    throw GeneratorError(GeneratorErrorKind::kPluginTimeout,
                         "plugin timed out after " +
                             std::to_string(options.timeout.count() / 1000.0) +
                             " s",
                         result.captured_stderr);
  }
  if (result.exit_code != 0) {
    throw GeneratorError(GeneratorErrorKind::kPluginFailed,
                         "plugin failed (exit code " +
                             std::to_string(result.exit_code) + ")",
                         result.captured_stderr);
  }
  if (!std::filesystem::exists(out_path)) {
    throw GeneratorError(GeneratorErrorKind::kMalformedOutput,
                         "plugin wrote no output file", result.captured_stderr);
  }
  std::optional<LoadResult> load;
  try {
    load.emplace(LoadTable(out_path, train.schema()));
  } catch (const Error& e) {
    throw GeneratorError(GeneratorErrorKind::kMalformedOutput,
                         std::string("plugin output rejected: ") + e.what(),
                         result.captured_stderr);
  }
  LoadResult& loaded = *load;
  if (loaded.dropped_rows > 0 || loaded.table.row_count() != n) {
    throw GeneratorError(
        GeneratorErrorKind::kMalformedOutput,
        "plugin output has " + std::to_string(loaded.table.row_count()) +
            " valid rows and " + std::to_string(loaded.dropped_rows) +
            " invalid rows; expected " + std::to_string(n),
        result.captured_stderr);
  }
  return {std::move(loaded.table), result.seconds, result.captured_stderr};
}

BenchConfig BenchConfigFromJson(const nlohmann::json& j,
                                const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  BenchConfig c;
  c.runs = GetOr<std::size_t>(j, "runs", c.runs);
  c.train_size = GetOr<std::size_t>(j, "train_size", c.train_size);
  c.gen_size = GetOr<std::size_t>(j, "gen_size", c.gen_size);
  c.seed = GetOr<std::uint64_t>(j, "seed", c.seed);
  if (j.contains("metrics")) {
    const auto& m = j.at("metrics");
    if (m.is_array()) {
      std::string joined;
      for (const auto& item : m) {
        if (!item.is_string()) {
          throw ValidationError("config key 'metrics' has the wrong type");
        }
        joined += item.get<std::string>() + ",";
      }
      c.metrics.metrics = ParseMetricSelection(joined);
    } else {
      c.metrics.metrics = ParseMetricSelection(GetOr<std::string>(j, "metrics", ""));
    }
  }
  c.metrics.graph_source = GetOr<std::string>(j, "graph_source", "");
  c.metrics.graph_target = GetOr<std::string>(j, "graph_target", "");
  c.metrics.margin_fraction = GetOr<double>(j, "margin", c.metrics.margin_fraction);
  c.metrics.percentile = GetOr<double>(j, "percentile", c.metrics.percentile);
  c.metrics.parallel = GetOr<bool>(j, "parallel_metrics", false);
  c.holdout = GetOr<bool>(j, "holdout", false);
  c.plugin.timeout = DefaultPluginTimeout();
  if (j.contains("timeout")) {
    const double seconds = GetOr<double>(j, "timeout", 0.0);
    if (!(seconds > 0)) throw ValidationError("timeout must be positive");
    c.plugin.timeout =
        std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
  }
  c.plugin.temp_parent = GetOr<std::string>(j, "temp_dir", "");

  if (j.contains("generators")) {
    const auto& gens = j.at("generators");
    if (!gens.is_array()) throw ValidationError("'generators' must be an array");
    for (const auto& g : gens) {
      if (!g.is_object() || !g.contains("generator")) {
        throw ValidationError("each generator entry needs a 'generator' key");
      }
      for (const auto& [key, value] : g.items()) {
        if (key != "generator" && key != "name" && key != "hparams" &&
            key != "grid" && key != "grid_file") {
          throw ValidationError("unknown generator key '" + key + "'");
        }
      }
      BenchGenerator bg;
      bg.spec = ParseGeneratorSpec(GetOr<std::string>(g, "generator", ""));
      bg.spec.name = GetOr<std::string>(g, "name", bg.spec.name);
      if (g.contains("hparams")) {
        bg.spec.hyperparams = g.at("hparams");
        if (!bg.spec.hyperparams.is_object()) {
          throw ValidationError("'hparams' of '" + bg.spec.name +
                                "' must be an object");
        }
      }
      if (g.contains("grid_file")) {
        auto path = std::filesystem::path(GetOr<std::string>(g, "grid_file", ""));
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        bg.grid = ReadJsonFile(path);
      }
      if (g.contains("grid")) bg.grid.update(g.at("grid"));
      CheckGrid(bg.grid, bg.spec.name);
      c.generators.push_back(std::move(bg));
    }
  }
  return c;
}

nlohmann::json BenchConfigToJson(const BenchConfig& c) {
  nlohmann::json j;
  j["runs"] = c.runs;
  j["train_size"] = c.train_size;
  j["gen_size"] = c.gen_size;
  j["seed"] = c.seed;
  j["metrics"] = ToString(c.metrics.metrics);
  j["graph_source"] = c.metrics.graph_source;
  j["graph_target"] = c.metrics.graph_target;
  j["margin"] = c.metrics.margin_fraction;
  j["percentile"] = c.metrics.percentile;
  j["parallel_metrics"] = c.metrics.parallel;
  j["holdout"] = c.holdout;
  j["timeout"] = static_cast<double>(c.plugin.timeout.count()) / 1000.0;
  j["generators"] = nlohmann::json::array();
  for (const auto& g : c.generators) {
    std::string text = ToString(g.spec.kind);
    if (g.spec.kind == GeneratorKind::kPlugin) text += ":" + g.spec.command;
    j["generators"].push_back({{"generator", text},
                               {"name", g.spec.name},
                               {"hparams", g.spec.hyperparams},
                               {"grid", g.grid}});
  }
  return j;
}

void ValidateBenchConfig(const BenchConfig& c) {
  if (c.runs < 1) throw ValidationError("runs must be at least 1");
  if (c.train_size < 1) throw ValidationError("train_size must be at least 1");
  if (c.gen_size < 1) throw ValidationError("gen_size must be at least 1");
  if (c.generators.empty()) throw ValidationError("no generators configured");
  if (!(c.metrics.margin_fraction >= 0.0 && c.metrics.margin_fraction < 1.0)) {
    throw ValidationError("margin must be in [0, 1)");
  }
  if (!(c.metrics.percentile > 0.0 && c.metrics.percentile < 100.0)) {
    throw ValidationError("percentile must be in (0, 100)");
  }
  if (c.metrics.graph_source.empty() != c.metrics.graph_target.empty()) {
    throw ValidationError("graph source and target must be given together");
  }
}

std::string ConfigHash(const BenchConfig& config) {
  const std::string text = BenchConfigToJson(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::size_t> ShuffledPrefix(std::size_t n, std::size_t k,
                                        std::uint64_t seed) {
  k = std::min(k, n);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.UniformIndex(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

DataTable Subset(const DataTable& real, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw ValidationError("subset size must be at least 1");
  const auto rows = ShuffledPrefix(real.row_count(), k, seed);
  return real.SelectRows(rows);
}

nlohmann::json DrawHyperparameters(const nlohmann::json& fixed,
                                   const nlohmann::json& grid, Rng& rng) {
  nlohmann::json out = fixed.is_null() ? nlohmann::json::object() : fixed;
  for (const auto& [key, values] : grid.items()) {
    out[key] = values.at(rng.UniformIndex(values.size()));
  }
  return out;
}

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<MetricReport> RunBenchmark(const DataTable& real,
                                       std::string_view dataset_id,
                                       const BenchConfig& config) {
  ValidateBenchConfig(config);
  const std::size_t train_rows = std::min(config.train_size, real.row_count());
  const auto shuffled =
      ShuffledPrefix(real.row_count(),
                     config.holdout ? 2 * config.train_size : config.train_size,
                     DeriveSeed(config.seed, "subset"));
  const DataTable train = real.SelectRows(
      std::span<const std::size_t>(shuffled.data(), train_rows));
  std::optional<DataTable> holdout;
  if (config.holdout) {
    if (shuffled.size() <= train_rows) {
      throw ValidationError("no rows left for a holdout split");
    }
    holdout = real.SelectRows(std::span<const std::size_t>(
        shuffled.data() + train_rows, shuffled.size() - train_rows));
  }
  const DataTable& target = holdout ? *holdout : train;

  MetricOptions metric_options = config.metrics;
  metric_options.null_graph_when_unconfigured = true;
  const std::string hash = ConfigHash(config);

  std::vector<MetricReport> reports;
  for (std::size_t g = 0; g < config.generators.size(); ++g) {
    const auto& gen = config.generators[g];
    MetricReport report;
    report.generator = gen.spec.name;
    report.dataset = std::string(dataset_id);
    report.metadata.seed = config.seed;
    report.metadata.config_hash = hash;
    report.metadata.started_at = UtcTimestamp();
    report.metadata.runs = config.runs;
    report.metadata.train_rows = train.row_count();
    report.metadata.synthetic_rows = config.gen_size;
    report.metadata.evaluated_against = holdout ? "holdout" : "training";
    report.metadata.margin_fraction = config.metrics.margin_fraction;
    report.metadata.percentile = config.metrics.percentile;

    const std::uint64_t gen_seed = DeriveSeed(config.seed, g);
    Rng draw_rng(DeriveSeed(gen_seed, "hyperparameters"));
    try {
      double total_seconds = 0.0;
      std::optional<DataTable> last;
      for (std::size_t run = 0; run < config.runs; ++run) {
        GeneratorSpec spec = gen.spec;
        spec.hyperparams = DrawHyperparameters(gen.spec.hyperparams, gen.grid,
                                               draw_rng);
        spec.seed = DeriveSeed(gen_seed, run);
        report.details.hyperparameter_draws.push_back(spec.hyperparams);
        auto out = TimedGenerate(spec, train, config.gen_size, config.plugin);
        total_seconds += out.seconds;
        last = std::move(out.table);
      }
      report.efficiency_seconds =
          total_seconds / static_cast<double>(config.runs);
      ScoreSynthetic(target, *last, metric_options, report);
    } catch (const GeneratorError& e) {
      report.failure = GeneratorFailure{ToString(e.kind()), e.what(),
                                        e.captured_stderr()};
    } catch (const ValidationError& e) {
      report.failure = GeneratorFailure{"validation_error", e.what(), {}};
    }
    if (report.failure) {
      // Partial scores from a failed run are never reported.
      MetricReport failed;
      failed.generator = report.generator;
      failed.dataset = report.dataset;
      failed.failure = report.failure;
      failed.details.hyperparameter_draws = report.details.hyperparameter_draws;
      failed.metadata = report.metadata;
      report = std::move(failed);
    }
    report.metadata.finished_at = UtcTimestamp();
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace synthbench
