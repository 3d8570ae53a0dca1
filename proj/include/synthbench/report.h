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

#ifndef SYNTHBENCH_REPORT_H_
#define SYNTHBENCH_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthbench/fidelity.h"
#include "synthbench/graph.h"

namespace synthbench {

// A score that was requested but may be undefined for the data at hand.
struct NullableScore {
  std::optional<double> value;
  std::string null_reason;  // set iff value is empty

  bool operator==(const NullableScore&) const = default;
};

struct GeneratorFailure {
  std::string kind;  // plugin_failed, plugin_timeout, malformed_output, ...
  std::string message;
  std::string captured_stderr;

  bool operator==(const GeneratorFailure&) const = default;
};

struct GraphDiagnostics {
  GraphSummary real;
  GraphSummary synthetic;
  bool single_cluster = false;
  std::optional<std::vector<double>> real_signature;
  std::optional<std::vector<double>> synthetic_signature;

  bool operator==(const GraphDiagnostics&) const = default;
};

struct ReportDetails {
  std::vector<ColumnScore> per_column;
  std::vector<PairScore> per_pair;
  std::optional<GraphDiagnostics> graph;
  std::vector<nlohmann::json> hyperparameter_draws;

  bool operator==(const ReportDetails&) const = default;
};

struct RunMetadata {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string started_at;   // ISO 8601, UTC
  std::string finished_at;  // ISO 8601, UTC
  std::size_t runs = 0;
  std::size_t train_rows = 0;
  std::size_t synthetic_rows = 0;
  std::string evaluated_against;  // "training", "holdout" or "real"
  double margin_fraction = 0.01;
  double percentile = 5.0;

  bool operator==(const RunMetadata&) const = default;
};

// One generator on one dataset. A metric family that was not requested is
// absent (empty optional); row_fidelity and netsimile may additionally be
// present but null.
struct MetricReport {
  std::string generator;
  std::string dataset;
  std::optional<double> column_fidelity;
  std::optional<NullableScore> row_fidelity;
  std::optional<double> synthesis;
  std::optional<double> dcr_p5;
  std::optional<double> nndr_p5;
  std::optional<double> efficiency_seconds;
  std::optional<NullableScore> netsimile;
  std::optional<GeneratorFailure> failure;
  ReportDetails details;
  RunMetadata metadata;

  bool ok() const { return !failure.has_value(); }
  bool operator==(const MetricReport&) const = default;
};

nlohmann::ordered_json ReportToJson(const MetricReport& report);
MetricReport ReportFromJson(const nlohmann::ordered_json& json);

// {"format": "synthbench-report", "version": 1, "reports": [...]}
std::string RenderJson(const std::vector<MetricReport>& reports);
std::vector<MetricReport> ParseReportsJson(const std::string& text);

// One row per generator, the seven score columns in fixed order. Scores use
// five decimals; efficiency is whole seconds ("401 s") from one second up
// and five decimals below; missing or null values render as NaN. Failed
// generators render NaN cells and a "(failed: kind)" suffix on the name.
std::string RenderMarkdown(const std::vector<MetricReport>& reports);
std::string MarkdownRow(const MetricReport& report);

enum class ReportFormat { kJson, kMarkdown };

void EmitReport(const std::vector<MetricReport>& reports, ReportFormat format,
                const std::filesystem::path& path);

}  // namespace synthbench

#endif  // SYNTHBENCH_REPORT_H_
