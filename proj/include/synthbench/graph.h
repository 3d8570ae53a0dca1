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

#ifndef SYNTHBENCH_GRAPH_H_
#define SYNTHBENCH_GRAPH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synthbench/tabular.h"

namespace synthbench {

// Simple undirected graph: no self-loops, no parallel edges, sorted and
// symmetric adjacency lists.
struct TransactionGraph {
  std::vector<std::string> labels;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::size_t edge_count = 0;

  std::size_t node_count() const { return adjacency.size(); }
};

// Graph on nodes [0, node_count); self-loops are dropped and parallel edges
// collapsed. Labels are the decimal node ids.
TransactionGraph GraphFromEdges(
    std::size_t node_count,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

// One node per distinct source/target token, one edge per transaction.
// Both columns must be categorical. Throws ValidationError("empty graph")
// when no edge survives simplification.
TransactionGraph BuildGraph(const DataTable& table, std::string_view source,
                            std::string_view target);

inline constexpr std::size_t kNodeFeatureCount = 7;
inline constexpr std::size_t kAggregateCount = 5;
inline constexpr std::size_t kSignatureLength =
    kNodeFeatureCount * kAggregateCount;

// Per-node features, in this order: degree, clustering coefficient, mean
// neighbour degree, mean neighbour clustering, egonet edges, egonet
// outgoing edges, egonet neighbours.
using NodeFeatureRow = std::array<double, kNodeFeatureCount>;

std::vector<NodeFeatureRow> ComputeNodeFeatures(const TransactionGraph& graph);

// For each feature in order: median, mean, standard deviation, skewness,
// excess kurtosis (population moments; all three are 0 for a constant
// feature).
using GraphSignature = std::array<double, kSignatureLength>;

GraphSignature ComputeSignature(const TransactionGraph& graph);
GraphSignature AggregateFeatures(std::span<const NodeFeatureRow> features);

// Canberra distance; 0/0 terms count as 0. Lower means more similar.
double NetSimileDistance(std::span<const double> a, std::span<const double> b);

std::size_t ConnectedComponents(const TransactionGraph& graph);

struct GraphSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t components = 0;

  bool operator==(const GraphSummary&) const = default;
};

struct GraphComparison {
  std::optional<double> distance;  // empty when either graph is empty
  std::string null_reason;
  GraphSummary real;
  GraphSummary synthetic;
  // Synthetic graph is one connected component while the real one is not.
  bool single_cluster = false;
  std::optional<GraphSignature> real_signature;
  std::optional<GraphSignature> synthetic_signature;
};

GraphComparison CompareGraphs(const DataTable& real, const DataTable& synth,
                              std::string_view source, std::string_view target);

}  // namespace synthbench

#endif  // SYNTHBENCH_GRAPH_H_
