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

#include "synthbench/report.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "synthbench/error.h"

namespace synthbench {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kMarkdownHeader[] = {
    "column-wise Fidelity score",   "row-wise Fidelity score",
    "Synthesis score",              "Privacy - DCR 5th percentile",
    "Privacy - NNDR 5th percentile", "Efficiency",
    "Graph Structure-NetSimile",
};

std::string Fixed5(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", v);
  return buf;
}

std::string Cell(const std::optional<double>& v) {
  return v ? Fixed5(*v) : "NaN";
}

std::string Cell(const std::optional<NullableScore>& v) {
  return v && v->value ? Fixed5(*v->value) : "NaN";
}

std::string EfficiencyCell(const std::optional<double>& v) {
  if (!v) return "NaN";
  if (*v >= 1.0) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.0f s", *v);
    return buf;
  }
  return Fixed5(*v) + " s";
}

void PutOptional(ojson& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

void PutNullable(ojson& j, ojson& reasons, const char* key,
                 const std::optional<NullableScore>& v) {
  if (!v) return;
  if (v->value) {
    j[key] = *v->value;
  } else {
    j[key] = nullptr;
    reasons[key] = v->null_reason;
  }
}

std::optional<double> GetOptional(const ojson& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::optional<NullableScore> GetNullable(const ojson& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  NullableScore s;
  if (j.at(key).is_null()) {
    if (j.contains("null_reasons") && j.at("null_reasons").contains(key)) {
      s.null_reason = j.at("null_reasons").at(key).get<std::string>();
    }
  } else {
    s.value = j.at(key).get<double>();
  }
  return s;
}

ojson SummaryToJson(const GraphSummary& s) {
  ojson j;
  j["nodes"] = s.nodes;
  j["edges"] = s.edges;
  j["components"] = s.components;
  return j;
}

GraphSummary SummaryFromJson(const ojson& j) {
  return {j.at("nodes").get<std::size_t>(), j.at("edges").get<std::size_t>(),
          j.at("components").get<std::size_t>()};
}

}  // namespace

ojson ReportToJson(const MetricReport& r) {
  ojson j;
  ojson reasons = ojson::object();
  j["generator"] = r.generator;
  j["dataset"] = r.dataset;
  PutOptional(j, "column_fidelity", r.column_fidelity);
  PutNullable(j, reasons, "row_fidelity", r.row_fidelity);
  PutOptional(j, "synthesis", r.synthesis);
  PutOptional(j, "dcr_p5", r.dcr_p5);
  PutOptional(j, "nndr_p5", r.nndr_p5);
  PutOptional(j, "efficiency_seconds", r.efficiency_seconds);
  PutNullable(j, reasons, "netsimile", r.netsimile);
  j["status"] = r.ok() ? "ok" : "failed";
  if (!reasons.empty()) j["null_reasons"] = reasons;
  if (r.failure) {
    j["error"] = {{"kind", r.failure->kind},
                  {"message", r.failure->message},
                  {"stderr", r.failure->captured_stderr}};
  }

  ojson details = ojson::object();
  if (!r.details.per_column.empty()) {
    ojson cols = ojson::object();
    for (const auto& c : r.details.per_column) cols[c.column] = c.score;
    details["per_column"] = cols;
  }
  if (!r.details.per_pair.empty()) {
    ojson pairs = ojson::array();
    for (const auto& p : r.details.per_pair) {
      pairs.push_back({{"columns", {p.first, p.second}},
                       {"real_correlation", p.real_correlation},
                       {"synthetic_correlation", p.synthetic_correlation},
                       {"score", p.score}});
    }
    details["per_pair"] = pairs;
  }
  if (r.details.graph) {
    const auto& g = *r.details.graph;
    ojson graph;
    graph["real"] = SummaryToJson(g.real);
    graph["synthetic"] = SummaryToJson(g.synthetic);
    graph["single_cluster"] = g.single_cluster;
    if (g.real_signature) graph["real_signature"] = *g.real_signature;
    if (g.synthetic_signature) {
      graph["synthetic_signature"] = *g.synthetic_signature;
    }
    details["graph"] = graph;
  }
  if (!r.details.hyperparameter_draws.empty()) {
    ojson draws = ojson::array();
    for (const auto& d : r.details.hyperparameter_draws) {
      draws.push_back(ojson::parse(d.dump()));
    }
    details["hyperparameter_draws"] = draws;
  }
  if (!details.empty()) j["details"] = details;

  const auto& m = r.metadata;
  j["metadata"] = {{"seed", m.seed},
                   {"config_hash", m.config_hash},
                   {"started_at", m.started_at},
                   {"finished_at", m.finished_at},
                   {"runs", m.runs},
                   {"train_rows", m.train_rows},
                   {"synthetic_rows", m.synthetic_rows},
                   {"evaluated_against", m.evaluated_against},
                   {"margin_fraction", m.margin_fraction},
                   {"percentile", m.percentile}};
  return j;
}

MetricReport ReportFromJson(const ojson& j) {
  MetricReport r;
  try {
    r.generator = j.at("generator").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.column_fidelity = GetOptional(j, "column_fidelity");
    r.row_fidelity = GetNullable(j, "row_fidelity");
    r.synthesis = GetOptional(j, "synthesis");
    r.dcr_p5 = GetOptional(j, "dcr_p5");
    r.nndr_p5 = GetOptional(j, "nndr_p5");
    r.efficiency_seconds = GetOptional(j, "efficiency_seconds");
    r.netsimile = GetNullable(j, "netsimile");
    if (j.contains("error")) {
      const auto& e = j.at("error");
      r.failure = GeneratorFailure{e.at("kind").get<std::string>(),
                                   e.at("message").get<std::string>(),
                                   e.at("stderr").get<std::string>()};
    }
    if (j.contains("details")) {
      const auto& d = j.at("details");
      if (d.contains("per_column")) {
        for (const auto& [name, score] : d.at("per_column").items()) {
          r.details.per_column.push_back({name, score.get<double>()});
        }
      }
      if (d.contains("per_pair")) {
        for (const auto& p : d.at("per_pair")) {
          r.details.per_pair.push_back(
              {p.at("columns").at(0).get<std::string>(),
               p.at("columns").at(1).get<std::string>(),
               p.at("real_correlation").get<double>(),
               p.at("synthetic_correlation").get<double>(),
               p.at("score").get<double>()});
        }
      }
      if (d.contains("graph")) {
        const auto& g = d.at("graph");
        GraphDiagnostics diag;
        diag.real = SummaryFromJson(g.at("real"));
        diag.synthetic = SummaryFromJson(g.at("synthetic"));
        diag.single_cluster = g.at("single_cluster").get<bool>();
        if (g.contains("real_signature")) {
          diag.real_signature = g.at("real_signature").get<std::vector<double>>();
        }
        if (g.contains("synthetic_signature")) {
          diag.synthetic_signature =
              g.at("synthetic_signature").get<std::vector<double>>();
        }
        r.details.graph = std::move(diag);
      }
      if (d.contains("hyperparameter_draws")) {
        for (const auto& draw : d.at("hyperparameter_draws")) {
          r.details.hyperparameter_draws.push_back(
              nlohmann::json::parse(draw.dump()));
        }
      }
    }
    const auto& m = j.at("metadata");
    r.metadata.seed = m.at("seed").get<std::uint64_t>();
    r.metadata.config_hash = m.at("config_hash").get<std::string>();
    r.metadata.started_at = m.at("started_at").get<std::string>();
    r.metadata.finished_at = m.at("finished_at").get<std::string>();
    r.metadata.runs = m.at("runs").get<std::size_t>();
    r.metadata.train_rows = m.at("train_rows").get<std::size_t>();
    r.metadata.synthetic_rows = m.at("synthetic_rows").get<std::size_t>();
    r.metadata.evaluated_against = m.at("evaluated_against").get<std::string>();
    r.metadata.margin_fraction = m.at("margin_fraction").get<double>();
    r.metadata.percentile = m.at("percentile").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report JSON: ") + e.what());
  }
  return r;
}

std::string RenderJson(const std::vector<MetricReport>& reports) {
  ojson doc;
  doc["format"] = "synthbench-report";
  doc["version"] = 1;
  doc["reports"] = ojson::array();
  for (const auto& r : reports) doc["reports"].push_back(ReportToJson(r));
  return doc.dump(2) + "\n";
}

std::vector<MetricReport> ParseReportsJson(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "synthbench-report") {
    throw ValidationError("not a synthbench report document");
  }
  if (!doc.contains("reports") || !doc.at("reports").is_array()) {
    throw ValidationError("report JSON has no 'reports' array");
  }
  std::vector<MetricReport> out;
  for (const auto& r : doc.at("reports")) out.push_back(ReportFromJson(r));
  return out;
}

std::string MarkdownRow(const MetricReport& r) {
  std::string name = r.generator;
  if (!r.ok()) name += " (failed: " + r.failure->kind + ")";
  std::string row = "| " + name;
  const std::string cells[] = {
      Cell(r.column_fidelity), Cell(r.row_fidelity), Cell(r.synthesis),
      Cell(r.dcr_p5),          Cell(r.nndr_p5),      EfficiencyCell(r.efficiency_seconds),
      Cell(r.netsimile),
  };
  for (const auto& c : cells) row += " | " + (r.ok() ? c : std::string("NaN"));
  row += " |";
  return row;
}

std::string RenderMarkdown(const std::vector<MetricReport>& reports) {
  std::string out = "| Generator";
  for (const char* h : kMarkdownHeader) out += std::string(" | ") + h;
  out += " |\n|---";
  for (std::size_t i = 0; i < std::size(kMarkdownHeader); ++i) out += "|---";
  out += "|\n";
  for (const auto& r : reports) out += MarkdownRow(r) + "\n";
  return out;
}

void EmitReport(const std::vector<MetricReport>& reports, ReportFormat format,
                const std::filesystem::path& path) {
  if (reports.empty()) throw ValidationError("no reports to emit");
  const std::string text = format == ReportFormat::kJson
                               ? RenderJson(reports)
                               : RenderMarkdown(reports);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace synthbench
