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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "synthbench/bench.h"
#include "synthbench/error.h"
#include "synthbench/generators.h"
#include "synthbench/graph.h"
#include "synthbench/parallel.h"
#include "synthbench/report.h"
#include "synthbench/tabular.h"

namespace synthbench {
namespace {

namespace fs = std::filesystem;

struct InputOptions {
  std::string schema_path;
  std::string delimiter = ",";
  unsigned threads = 0;
  std::uint64_t seed = kDefaultSeed;
};

void AddInputOptions(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--schema", in.schema_path,
                  "Column kind overrides, one 'name: numeric|categorical' "
                  "per line");
  cmd->add_option("--delimiter", in.delimiter, "CSV field delimiter")
      ->capture_default_str();
  cmd->add_option("--threads", in.threads,
                  "Worker threads for metric kernels (0: all cores)")
      ->capture_default_str();
  cmd->add_option("--seed", in.seed, "Seed for every random draw")
      ->capture_default_str();
}

CsvOptions ToCsvOptions(const InputOptions& in) {
  if (in.delimiter.size() != 1) {
    throw ValidationError("--delimiter must be a single character");
  }
  return CsvOptions{in.delimiter[0]};
}

TableSchema ResolveSchema(const fs::path& path, const InputOptions& in) {
  TableSchema schema = InferSchema(path, kDefaultInferenceRows, ToCsvOptions(in));
  if (!in.schema_path.empty()) {
    schema = ApplyOverrides(schema, ReadSchemaOverrides(in.schema_path));
  }
  return schema;
}

DataTable Load(const fs::path& path, const TableSchema& schema,
               const InputOptions& in, std::ostream& err) {
  LoadResult result = LoadTable(path, schema, ToCsvOptions(in));
  if (result.dropped_rows > 0) {
    err << "warning: dropped " << result.dropped_rows
        << " rows with missing or invalid values from '" << path.string()
        << "'\n";
  }
  return std::move(result.table);
}

ReportFormat ParseFormat(const std::string& text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  throw ValidationError("unknown report format '" + text + "'");
}

void WriteText(const std::string& text, const std::string& path,
               std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw IoError("failed writing '" + path + "'");
}

std::chrono::milliseconds SecondsToMs(double seconds) {
  if (!(seconds > 0)) throw ValidationError("--timeout must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

// Parses repeated key=value pairs. Values that parse as JSON keep their type;
// anything else is kept as a string.
nlohmann::json ParseHparams(const std::vector<std::string>& pairs) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& pair : pairs) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("--hparam expects key=value, got '" + pair + "'");
    }
    const std::string key = pair.substr(0, eq);
    const std::string value = pair.substr(eq + 1);
    auto parsed = nlohmann::json::parse(value, nullptr, false);
    out[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
  }
  return out;
}

void PrintFailure(const std::string& generator, const GeneratorFailure& f,
                  std::ostream& err) {
  err << "error: generator '" << generator << "' " << f.kind << ": "
      << f.message << "\n";
  if (!f.captured_stderr.empty()) {
    err << "--- captured stderr ---\n" << f.captured_stderr;
    if (f.captured_stderr.back() != '\n') err << "\n";
  }
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  InputOptions in;
  std::string real;
  std::string synth;
  std::string metrics = "all";
  std::string graph_source;
  std::string graph_target;
  double margin = 0.01;
  double percentile = 5.0;
  std::string out = "-";
  std::string format = "json";
  bool parallel_metrics = false;
};

int RunEvaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  MetricOptions options;
  options.metrics = ParseMetricSelection(a.metrics);
  options.graph_source = a.graph_source;
  options.graph_target = a.graph_target;
  options.margin_fraction = a.margin;
  options.percentile = a.percentile;
  options.parallel = a.parallel_metrics;
  if (a.graph_source.empty() != a.graph_target.empty()) {
    throw ValidationError("--graph-source and --graph-target go together");
  }
  const ReportFormat format = ParseFormat(a.format);

  const TableSchema schema = ResolveSchema(a.real, a.in);
  const DataTable real = Load(a.real, schema, a.in, err);
  const DataTable synth = Load(a.synth, schema, a.in, err);

  MetricReport report;
  report.generator = fs::path(a.synth).filename().string();
  report.dataset = fs::path(a.real).filename().string();
  report.metadata.seed = a.in.seed;
  report.metadata.started_at = UtcTimestamp();
  report.metadata.train_rows = real.row_count();
  report.metadata.synthetic_rows = synth.row_count();
  report.metadata.evaluated_against = "real";
  report.metadata.margin_fraction = a.margin;
  report.metadata.percentile = a.percentile;
  ScoreSynthetic(real, synth, options, report);
  report.metadata.finished_at = UtcTimestamp();

  const std::vector<MetricReport> reports{report};
  WriteText(format == ReportFormat::kJson ? RenderJson(reports)
                                          : RenderMarkdown(reports),
            a.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  InputOptions in;
  std::string real;
  std::string generator;
  std::vector<std::string> hparams;
  std::size_t n = 0;
  std::string out;
  double timeout = 0.0;
  std::string temp_dir;
};

int RunGenerate(const GenerateArgs& a, const CLI::App& cmd, std::ostream& out,
                std::ostream& err) {
  GeneratorSpec spec = ParseGeneratorSpec(a.generator);
  spec.hyperparams = ParseHparams(a.hparams);
  spec.seed = a.in.seed;
  PluginOptions plugin;
  plugin.timeout = cmd.count("--timeout") ? SecondsToMs(a.timeout)
                                          : DefaultPluginTimeout();
  plugin.temp_parent = a.temp_dir;

  const TableSchema schema = ResolveSchema(a.real, a.in);
  const DataTable real = Load(a.real, schema, a.in, err);
  std::optional<TimedOutput> generated;
  try {
    generated.emplace(TimedGenerate(spec, real, a.n, plugin));
  } catch (const GeneratorError& e) {
    PrintFailure(spec.name, {ToString(e.kind()), e.what(), e.captured_stderr()},
                 err);
    return kExitGenerator;
  }
  const TimedOutput& result = *generated;
  if (a.out == "-") {
    out << ToCsv(result.table, ToCsvOptions(a.in));
  } else {
    WriteTable(result.table, a.out, ToCsvOptions(a.in));
  }
  err << "generated " << result.table.row_count() << " rows in "
      << result.seconds << " s\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  InputOptions in;
  std::string real;
  std::string config;
  std::string dataset;
  std::vector<std::string> generators;
  std::vector<std::string> hparams;
  std::string grid;
  std::size_t runs = 30;
  std::size_t train_size = 100000;
  std::size_t gen_size = 10000;
  std::string metrics = "all";
  std::string graph_source;
  std::string graph_target;
  double margin = 0.01;
  double percentile = 5.0;
  bool parallel_metrics = false;
  bool holdout = false;
  double timeout = 0.0;
  std::string temp_dir;
  std::string out_json = "report.json";
  std::string out_md = "report.md";
};

BenchConfig ResolveBenchConfig(const BenchArgs& a, const CLI::App& cmd) {
  BenchConfig c;
  c.plugin.timeout = DefaultPluginTimeout();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw IoError("cannot open '" + a.config + "' for reading");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("'" + a.config + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    static const char* const kKnown[] = {
        "runs",     "train_size",   "gen_size",     "seed",
        "metrics",  "graph_source", "graph_target", "margin",
        "percentile", "parallel_metrics", "holdout", "timeout",
        "temp_dir", "generators",   "dataset",      "schema",
        "delimiter", "threads",     "out_json",     "out_md"};
    for (const auto& [key, value] : j.items()) {
      if (std::find(std::begin(kKnown), std::end(kKnown), key) ==
          std::end(kKnown)) {
        throw ValidationError("unknown config key '" + key + "'");
      }
    }
    c = BenchConfigFromJson(j, fs::path(a.config).parent_path());
  }
  const auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
  if (given("--runs")) c.runs = a.runs;
  if (given("--train-size")) c.train_size = a.train_size;
  if (given("--gen-size")) c.gen_size = a.gen_size;
  if (given("--seed")) c.seed = a.in.seed;
  if (given("--metrics")) c.metrics.metrics = ParseMetricSelection(a.metrics);
  if (given("--graph-source")) c.metrics.graph_source = a.graph_source;
  if (given("--graph-target")) c.metrics.graph_target = a.graph_target;
  if (given("--margin")) c.metrics.margin_fraction = a.margin;
  if (given("--percentile")) c.metrics.percentile = a.percentile;
  if (given("--parallel-metrics")) c.metrics.parallel = a.parallel_metrics;
  if (given("--holdout")) c.holdout = a.holdout;
  if (given("--timeout")) c.plugin.timeout = SecondsToMs(a.timeout);
  if (given("--temp-dir")) c.plugin.temp_parent = a.temp_dir;
  if (given("--generator")) {
    nlohmann::json grid = nlohmann::json::object();
    if (!a.grid.empty()) {
      std::ifstream in(a.grid);
      if (!in) throw IoError("cannot open '" + a.grid + "' for reading");
      try {
        grid = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError("'" + a.grid + "' is not valid JSON: " + e.what());
      }
    }
    c.generators.clear();
    for (const auto& text : a.generators) {
      BenchGenerator g;
      g.spec = ParseGeneratorSpec(text);
      g.spec.hyperparams = ParseHparams(a.hparams);
      g.grid = grid;
      c.generators.push_back(std::move(g));
    }
  }
  ValidateBenchConfig(c);
  return c;
}

// Settings that live in the config file but only affect the CLI itself.
void ApplyCliKeysFromConfig(BenchArgs& a, const CLI::App& cmd) {
  if (a.config.empty()) return;
  std::ifstream in(a.config);
  if (!in) return;
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (!j.is_object()) return;
  const auto take = [&](const char* key, const char* flag, auto& field) {
    if (j.contains(key) && !cmd.count(flag)) {
      try {
        field = j.at(key).get<std::decay_t<decltype(field)>>();
      } catch (const nlohmann::json::exception&) {
        throw ValidationError(std::string("config key '") + key +
                              "' has the wrong type");
      }
    }
  };
  take("dataset", "--dataset", a.dataset);
  take("schema", "--schema", a.in.schema_path);
  take("delimiter", "--delimiter", a.in.delimiter);
  take("threads", "--threads", a.in.threads);
  take("out_json", "--out-json", a.out_json);
  take("out_md", "--out-md", a.out_md);
  if (j.contains("schema") && !cmd.count("--schema")) {
    const fs::path p(a.in.schema_path);
    if (p.is_relative()) {
      a.in.schema_path = (fs::path(a.config).parent_path() / p).string();
    }
  }
}

int RunBench(BenchArgs a, const CLI::App& cmd, std::ostream& out,
             std::ostream& err) {
  ApplyCliKeysFromConfig(a, cmd);
  SetDefaultWorkers(a.in.threads);
  const BenchConfig config = ResolveBenchConfig(a, cmd);

  const TableSchema schema = ResolveSchema(a.real, a.in);
  const DataTable real = Load(a.real, schema, a.in, err);
  const std::string dataset =
      a.dataset.empty() ? fs::path(a.real).filename().string() : a.dataset;
  const auto reports = RunBenchmark(real, dataset, config);

  EmitReport(reports, ReportFormat::kJson, a.out_json);
  EmitReport(reports, ReportFormat::kMarkdown, a.out_md);
  out << RenderMarkdown(reports);

  bool any_ok = false;
  for (const auto& r : reports) {
    if (r.ok()) {
      any_ok = true;
    } else {
      PrintFailure(r.generator, *r.failure, err);
    }
  }
  return any_ok ? kExitOk : kExitGenerator;
}

// ---------------------------------------------------------------------------
// graph

struct GraphArgs {
  InputOptions in;
  std::string input;
  std::string compare;
  std::string graph_source;
  std::string graph_target;
  std::string out = "-";
};

nlohmann::ordered_json SummaryJson(const GraphSummary& s,
                                   const std::optional<GraphSignature>& sig) {
  nlohmann::ordered_json j;
  j["nodes"] = s.nodes;
  j["edges"] = s.edges;
  j["components"] = s.components;
  j["signature"] = sig ? nlohmann::ordered_json(std::vector<double>(
                             sig->begin(), sig->end()))
                       : nlohmann::ordered_json(nullptr);
  return j;
}

int RunGraph(const GraphArgs& a, std::ostream& out, std::ostream& err) {
  const TableSchema schema = ResolveSchema(a.input, a.in);
  const DataTable input = Load(a.input, schema, a.in, err);
  nlohmann::ordered_json j;
  if (a.compare.empty()) {
    const TransactionGraph g = BuildGraph(input, a.graph_source, a.graph_target);
    const GraphSummary s{g.node_count(), g.edge_count,
                         ConnectedComponents(g)};
    j["input"] = SummaryJson(s, ComputeSignature(g));
  } else {
    const DataTable other = Load(a.compare, schema, a.in, err);
    const GraphComparison cmp =
        CompareGraphs(input, other, a.graph_source, a.graph_target);
    j["input"] = SummaryJson(cmp.real, cmp.real_signature);
    j["compare"] = SummaryJson(cmp.synthetic, cmp.synthetic_signature);
    j["netsimile"] = cmp.distance ? nlohmann::ordered_json(*cmp.distance)
                                  : nlohmann::ordered_json(nullptr);
    if (!cmp.distance) j["null_reason"] = cmp.null_reason;
    j["single_cluster"] = cmp.single_cluster;
  }
  WriteText(j.dump(2) + "\n", a.out, out);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"synthbench: benchmark harness for synthetic tabular data"};
  app.require_subcommand(1);

  EvaluateArgs ev;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a synthetic table against a real one");
  evaluate->add_option("--real", ev.real, "Real data CSV")->required();
  evaluate->add_option("--synth", ev.synth, "Synthetic data CSV")->required();
  AddInputOptions(evaluate, ev.in);
  evaluate->add_option("--metrics", ev.metrics,
                       "Comma list of fidelity,synthesis,privacy,graph or all")
      ->capture_default_str();
  evaluate->add_option("--graph-source", ev.graph_source,
                       "Categorical column holding edge sources");
  evaluate->add_option("--graph-target", ev.graph_target,
                       "Categorical column holding edge targets");
  evaluate->add_option("--margin", ev.margin,
                       "Synthesis margin as a fraction of each column range")
      ->capture_default_str();
  evaluate->add_option("--percentile", ev.percentile,
                       "Percentile reported for DCR and NNDR")
      ->capture_default_str();
  evaluate->add_option("--out", ev.out, "Report path, '-' for stdout")
      ->capture_default_str();
  evaluate->add_option("--format", ev.format, "Report format: json or markdown")
      ->capture_default_str();
  evaluate->add_flag("--parallel-metrics", ev.parallel_metrics,
                     "Compute metric families concurrently");

  GenerateArgs gen;
  CLI::App* generate =
      app.add_subcommand("generate", "Train a generator and write synthetic rows");
  generate->add_option("--real", gen.real, "Training data CSV")->required();
  generate->add_option("--generator", gen.generator,
                       "bootstrap, marginal, copula or plugin:<command>")
      ->required();
  generate->add_option("--hparam", gen.hparams,
                       "Hyperparameter key=value, repeatable")
      ->take_all();
  generate->add_option("--n", gen.n, "Number of rows to generate")->required();
  generate->add_option("--out", gen.out, "Output CSV, '-' for stdout")
      ->required();
  AddInputOptions(generate, gen.in);
  generate->add_option("--timeout", gen.timeout,
                       "Plugin timeout in seconds (default 7200)");
  generate->add_option("--temp-dir", gen.temp_dir,
                       "Parent directory for plugin scratch files");

  BenchArgs be;
  CLI::App* bench =
      app.add_subcommand("bench", "Run the full benchmark protocol");
  bench->add_option("--real", be.real, "Real data CSV")->required();
  bench->add_option("--config", be.config,
                    "JSON config mirroring these flags; flags win");
  bench->add_option("--dataset", be.dataset, "Dataset label in reports");
  bench->add_option("--generator", be.generators,
                    "Generator to benchmark, repeatable; replaces the config "
                    "list")
      ->take_all();
  bench->add_option("--hparam", be.hparams,
                    "Fixed hyperparameter key=value for --generator entries")
      ->take_all();
  bench->add_option("--grid", be.grid,
                    "JSON grid file (key -> list of values) for --generator "
                    "entries");
  AddInputOptions(bench, be.in);
  bench->add_option("--runs", be.runs, "Timed runs per generator")
      ->capture_default_str();
  bench->add_option("--train-size", be.train_size, "Training subset size")
      ->capture_default_str();
  bench->add_option("--gen-size", be.gen_size, "Synthetic rows per run")
      ->capture_default_str();
  bench->add_option("--metrics", be.metrics,
                    "Comma list of fidelity,synthesis,privacy,graph or all")
      ->capture_default_str();
  bench->add_option("--graph-source", be.graph_source,
                    "Categorical column holding edge sources");
  bench->add_option("--graph-target", be.graph_target,
                    "Categorical column holding edge targets");
  bench->add_option("--margin", be.margin,
                    "Synthesis margin as a fraction of each column range")
      ->capture_default_str();
  bench->add_option("--percentile", be.percentile,
                    "Percentile reported for DCR and NNDR")
      ->capture_default_str();
  bench->add_flag("--parallel-metrics", be.parallel_metrics,
                  "Compute metric families concurrently");
  bench->add_flag("--holdout", be.holdout,
                  "Score against a disjoint holdout instead of the training "
                  "subset");
  bench->add_option("--timeout", be.timeout,
                    "Plugin timeout in seconds (default 7200)");
  bench->add_option("--temp-dir", be.temp_dir,
                    "Parent directory for plugin scratch files");
  bench->add_option("--out-json", be.out_json, "JSON report path")
      ->capture_default_str();
  bench->add_option("--out-md", be.out_md, "Markdown report path")
      ->capture_default_str();

  GraphArgs gr;
  CLI::App* graph = app.add_subcommand(
      "graph", "Print the NetSimile signature of a transaction graph");
  graph->add_option("--input", gr.input, "CSV with edge columns")->required();
  graph->add_option("--compare", gr.compare,
                    "Second CSV; prints the NetSimile distance");
  graph->add_option("--graph-source", gr.graph_source,
                    "Categorical column holding edge sources")
      ->required();
  graph->add_option("--graph-target", gr.graph_target,
                    "Categorical column holding edge targets")
      ->required();
  graph->add_option("--out", gr.out, "Output JSON path, '-' for stdout")
      ->capture_default_str();
  AddInputOptions(graph, gr.in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*evaluate) {
      SetDefaultWorkers(ev.in.threads);
      return RunEvaluate(ev, out, err);
    }
    if (*generate) {
      SetDefaultWorkers(gen.in.threads);
      return RunGenerate(gen, *generate, out, err);
    }
    if (*bench) return RunBench(be, *bench, out, err);
    if (*graph) {
      SetDefaultWorkers(gr.in.threads);
      return RunGraph(gr, out, err);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const GeneratorError& e) {
    PrintFailure("", {ToString(e.kind()), e.what(), e.captured_stderr()}, err);
    return kExitGenerator;
  }
  return kExitValidation;
}

}  // namespace synthbench
