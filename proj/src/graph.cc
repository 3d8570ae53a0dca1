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

#include "synthbench/graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "synthbench/error.h"
#include "synthbench/parallel.h"

namespace synthbench {
namespace {

void Simplify(TransactionGraph& g) {
  g.edge_count = 0;
  for (auto& nbrs : g.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    g.edge_count += nbrs.size();
  }
  g.edge_count /= 2;
}

std::size_t ColumnOrThrow(const DataTable& table, std::string_view name) {
  const auto idx = table.schema().IndexOf(name);
  if (!idx) {
    throw ValidationError("graph column '" + std::string(name) +
                          "' not found");
  }
  if (table.schema().column(*idx).kind != ColumnKind::kCategorical) {
    throw ValidationError("graph column '" + std::string(name) +
                          "' is not categorical");
  }
  return *idx;
}

GraphSummary Summarize(const TransactionGraph& g) {
  return {g.node_count(), g.edge_count, ConnectedComponents(g)};
}

}  // namespace

TransactionGraph GraphFromEdges(
    std::size_t node_count,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  TransactionGraph g;
  g.adjacency.resize(node_count);
  g.labels.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    g.labels.push_back(std::to_string(i));
  }
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw ValidationError("edge endpoint out of range");
    }
    if (u == v) continue;
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  Simplify(g);
  return g;
}

TransactionGraph BuildGraph(const DataTable& table, std::string_view source,
                            std::string_view target) {
  const auto src_col = ColumnOrThrow(table, source);
  const auto dst_col = ColumnOrThrow(table, target);
  if (table.row_count() == 0) throw ValidationError("empty graph");

  TransactionGraph g;
  std::unordered_map<std::string_view, std::uint32_t> ids;
  const auto node_of = [&](std::string_view token) {
    auto [it, inserted] =
        ids.try_emplace(token, static_cast<std::uint32_t>(g.labels.size()));
    if (inserted) {
      g.labels.emplace_back(token);
      g.adjacency.emplace_back();
    }
    return it->second;
  };
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    const auto u = node_of(table.category(src_col, r));
    const auto v = node_of(table.category(dst_col, r));
    if (u == v) continue;
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  Simplify(g);
  if (g.edge_count == 0) throw ValidationError("empty graph");
  return g;
}

std::vector<NodeFeatureRow> ComputeNodeFeatures(const TransactionGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw ValidationError("empty graph");

  std::vector<double> degree(n);
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = static_cast<double>(g.adjacency[i].size());
  }

  // Triangles per node. Edges are oriented from lower to higher
  // (degree, id) rank so each triangle is found once.
  const auto rank_less = [&](std::uint32_t a, std::uint32_t b) {
    return g.adjacency[a].size() != g.adjacency[b].size()
               ? g.adjacency[a].size() < g.adjacency[b].size()
               : a < b;
  };
  std::vector<std::vector<std::uint32_t>> forward(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (auto v : g.adjacency[u]) {
      if (rank_less(u, v)) forward[u].push_back(v);
    }
  }
  std::vector<double> triangles(n, 0.0);
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  for (std::uint32_t u = 0; u < n; ++u) {
    ++stamp;
    for (auto v : forward[u]) mark[v] = stamp;
    for (auto v : forward[u]) {
      for (auto w : forward[v]) {
        if (mark[w] == stamp) {
          triangles[u] += 1.0;
          triangles[v] += 1.0;
          triangles[w] += 1.0;
        }
      }
    }
  }

  std::vector<double> clustering(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] >= 2.0) {
      clustering[i] = 2.0 * triangles[i] / (degree[i] * (degree[i] - 1.0));
    }
  }

  std::vector<NodeFeatureRow> out(n);
  ParallelFor(n, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> seen(n, 0);
    std::size_t token = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& nbrs = g.adjacency[i];
      double nbr_degree = 0.0;
      double nbr_clustering = 0.0;
      for (auto j : nbrs) {
        nbr_degree += degree[j];
        nbr_clustering += clustering[j];
      }
      const double d = degree[i];
      const double ego_edges = d + triangles[i];
      // Each edge inside the egonet is counted twice by the degree sum.
      const double ego_out = d + nbr_degree - 2.0 * ego_edges;

      ++token;
      seen[i] = token;
      for (auto j : nbrs) seen[j] = token;
      double ego_neighbors = 0.0;
      for (auto j : nbrs) {
        for (auto k : g.adjacency[j]) {
          if (seen[k] != token) {
            seen[k] = token;
            ego_neighbors += 1.0;
          }
        }
      }
      out[i] = {d,
                clustering[i],
                d > 0 ? nbr_degree / d : 0.0,
                d > 0 ? nbr_clustering / d : 0.0,
                ego_edges,
                ego_out,
                ego_neighbors};
    }
  });
  return out;
}

GraphSignature AggregateFeatures(std::span<const NodeFeatureRow> features) {
  if (features.empty()) throw ValidationError("empty graph");
  GraphSignature sig{};
  std::vector<double> v(features.size());
  const double n = static_cast<double>(features.size());
  for (std::size_t f = 0; f < kNodeFeatureCount; ++f) {
    for (std::size_t i = 0; i < features.size(); ++i) v[i] = features[i][f];
    // Sorting first makes the aggregates independent of node order.
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    const double median =
        m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
    double* out = sig.data() + f * kAggregateCount;
    out[0] = median;
    if (v.front() == v.back()) {
      out[1] = v.front();
      out[2] = out[3] = out[4] = 0.0;
      continue;
    }
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
      const double d = x - mean;
      const double d2 = d * d;
      m2 += d2;
      m3 += d2 * d;
      m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    out[1] = mean;
    out[2] = std::sqrt(m2);
    out[3] = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    out[4] = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
  }
  return sig;
}

GraphSignature ComputeSignature(const TransactionGraph& graph) {
  const auto features = ComputeNodeFeatures(graph);
  return AggregateFeatures(features);
}

double NetSimileDistance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ValidationError("signature length mismatch");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == b[k]) continue;
    sum += std::abs(a[k] - b[k]) / (std::abs(a[k]) + std::abs(b[k]));
  }
  return sum;
}

std::size_t ConnectedComponents(const TransactionGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<bool> visited(n, false);
  std::vector<std::uint32_t> stack;
  std::size_t components = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    ++components;
    visited[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : graph.adjacency[u]) {
        if (!visited[v]) {
          visited[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return components;
}

GraphComparison CompareGraphs(const DataTable& real, const DataTable& synth,
                              std::string_view source,
                              std::string_view target) {
  // Column problems are caller errors; an empty graph is a null score.
  ColumnOrThrow(real, source);
  ColumnOrThrow(real, target);
  ColumnOrThrow(synth, source);
  ColumnOrThrow(synth, target);

  GraphComparison out;
  std::optional<TransactionGraph> real_graph;
  std::optional<TransactionGraph> synth_graph;
  try {
    real_graph = BuildGraph(real, source, target);
  } catch (const ValidationError&) {
    out.null_reason = "real graph is empty";
  }
  try {
    synth_graph = BuildGraph(synth, source, target);
  } catch (const ValidationError&) {
    if (out.null_reason.empty()) out.null_reason = "synthetic graph is empty";
  }
  if (real_graph) {
    out.real = Summarize(*real_graph);
    out.real_signature = ComputeSignature(*real_graph);
  }
  if (synth_graph) {
    out.synthetic = Summarize(*synth_graph);
    out.synthetic_signature = ComputeSignature(*synth_graph);
  }
  if (real_graph && synth_graph) {
    out.distance =
        NetSimileDistance(*out.real_signature, *out.synthetic_signature);
    out.single_cluster =
        out.synthetic.components == 1 && out.real.components > 1;
  }
  return out;
}

}  // namespace synthbench
