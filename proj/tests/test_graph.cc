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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.h"
#include "synthbench/error.h"
#include "synthbench/graph.h"
#include "test_util.h"

using namespace synthbench;
using testing::kCat;
using testing::kNum;

namespace {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

TransactionGraph Make(std::size_t n, std::vector<Edge> edges) {
  return GraphFromEdges(n, edges);
}

DataTable EdgeTable(const std::vector<std::pair<std::string, std::string>>& e) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [a, b] : e) rows.push_back({a, b, "1"});
  return testing::Table(
      testing::Schema({{"src", kCat}, {"dst", kCat}, {"amount", kNum}}), rows);
}

}  // namespace

TEST_CASE("graph building collapses direction, duplicates and self-loops") {
  const auto g = BuildGraph(EdgeTable({{"A", "B"}, {"B", "A"}, {"A", "A"}}),
                            "src", "dst");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count == 1);
  CHECK(g.labels == std::vector<std::string>{"A", "B"});
  CHECK(g.adjacency[0] == std::vector<std::uint32_t>{1});
  CHECK(g.adjacency[1] == std::vector<std::uint32_t>{0});
}

TEST_CASE("graph building errors") {
  CHECK_THROWS_AS(BuildGraph(EdgeTable({{"A", "A"}}), "src", "dst"),
                  ValidationError);
  CHECK_THROWS_AS(BuildGraph(EdgeTable({{"A", "B"}}), "src", "nope"),
                  ValidationError);
  CHECK_THROWS_AS(BuildGraph(EdgeTable({{"A", "B"}}), "src", "amount"),
                  ValidationError);
}

TEST_CASE("triangle features") {
  const auto g = BuildGraph(EdgeTable({{"A", "B"}, {"B", "C"}, {"C", "A"}}),
                            "src", "dst");
  CHECK(g.edge_count == 3);
  const auto f = ComputeNodeFeatures(g);
  const NodeFeatureRow want{2, 1.0, 2, 1.0, 3, 0, 0};
  for (const auto& row : f) CHECK(row == want);
  const auto sig = ComputeSignature(g);
  for (std::size_t k = 0; k < kNodeFeatureCount; ++k) {
    CHECK(sig[k * kAggregateCount + 0] == want[k]);
    CHECK(sig[k * kAggregateCount + 1] == want[k]);
    CHECK(sig[k * kAggregateCount + 2] == 0.0);
    CHECK(sig[k * kAggregateCount + 3] == 0.0);
    CHECK(sig[k * kAggregateCount + 4] == 0.0);
  }
}

TEST_CASE("path and star features") {
  const auto path = Make(3, {{0, 1}, {1, 2}});
  const auto b = ComputeNodeFeatures(path)[1];
  CHECK(b == NodeFeatureRow{2, 0, 1, 0, 2, 0, 0});

  const std::size_t k = 6;
  std::vector<Edge> star;
  for (std::uint32_t i = 1; i <= k; ++i) star.push_back({0, i});
  const auto c = ComputeNodeFeatures(Make(k + 1, star))[0];
  CHECK(c[0] == k);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 1.0);
}

TEST_CASE("single edge aggregates") {
  const auto sig = ComputeSignature(Make(2, {{0, 1}}));
  CHECK(sig[0] == 1.0);
  CHECK(sig[1] == 1.0);
  CHECK(sig[2] == 0.0);
  CHECK(sig[3] == 0.0);
  CHECK(sig[4] == 0.0);
}

TEST_CASE("aggregates on a varied feature") {
  // Star with 3 leaves: degrees {3, 1, 1, 1}.
  const auto sig = ComputeSignature(Make(4, {{0, 1}, {0, 2}, {0, 3}}));
  const std::vector<double> d{1, 1, 1, 3};
  const double mean = 1.5;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : d) {
    m2 += std::pow(x - mean, 2) / 4;
    m3 += std::pow(x - mean, 3) / 4;
    m4 += std::pow(x - mean, 4) / 4;
  }
  CHECK(sig[0] == 1.0);
  CHECK(sig[1] == 1.5);
  CHECK(sig[2] == doctest::Approx(std::sqrt(m2)));
  CHECK(sig[3] == doctest::Approx(m3 / std::pow(m2, 1.5)));
  CHECK(sig[4] == doctest::Approx(m4 / (m2 * m2) - 3.0));
}

TEST_CASE("features match the set-based oracle on random graphs") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.UniformIndex(30);
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> oe;
    const std::size_t m = 1 + rng.UniformIndex(3 * n);
    for (std::size_t e = 0; e < m; ++e) {
      const auto u = static_cast<std::uint32_t>(rng.UniformIndex(n));
      const auto v = static_cast<std::uint32_t>(rng.UniformIndex(n));
      edges.push_back({u, v});
      oe.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    const auto got = ComputeNodeFeatures(Make(n, edges));
    const auto want = oracle::NodeFeatures(n, oe);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t f = 0; f < kNodeFeatureCount; ++f) {
        CHECK(got[i][f] == doctest::Approx(want[i][f]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("signature is invariant to relabeling") {
  Rng rng(13);
  const std::size_t n = 40;
  std::vector<Edge> edges;
  for (int e = 0; e < 120; ++e) {
    edges.push_back({static_cast<std::uint32_t>(rng.UniformIndex(n)),
                     static_cast<std::uint32_t>(rng.UniformIndex(n))});
  }
  const auto base = ComputeSignature(Make(n, edges));
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (int trial = 0; trial < 20; ++trial) {
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.UniformIndex(i + 1)]);
    std::vector<Edge> relabeled;
    for (auto [u, v] : edges) relabeled.push_back({perm[u], perm[v]});
    const auto sig = ComputeSignature(Make(n, relabeled));
    for (std::size_t k = 0; k < kSignatureLength; ++k) {
      CHECK(std::abs(sig[k] - base[k]) <= 1e-9);
    }
  }
}

TEST_CASE("canberra distance") {
  std::vector<double> a(kSignatureLength, 0.0), b(kSignatureLength, 0.0);
  a[0] = 1; a[1] = 0; a[2] = 2;
  b[0] = 1; b[1] = 1; b[2] = 0;
  CHECK(NetSimileDistance(a, b) == 2.0);
  CHECK(NetSimileDistance(a, a) == 0.0);
  CHECK(NetSimileDistance(a, b) == oracle::Canberra(a, b));
  CHECK_THROWS_AS(NetSimileDistance(a, std::vector<double>(3)), ValidationError);
}

TEST_CASE("connected components") {
  CHECK(ConnectedComponents(Make(5, {{0, 1}, {2, 3}})) == 3);
  CHECK(ConnectedComponents(Make(3, {{0, 1}, {1, 2}})) == 1);
}

TEST_CASE("compare graphs") {
  const auto real = EdgeTable({{"A", "B"}, {"B", "C"}, {"D", "E"}});
  const auto same = CompareGraphs(real, real, "src", "dst");
  REQUIRE(same.distance);
  CHECK(*same.distance == 0.0);
  CHECK(same.real == same.synthetic);
  CHECK(same.real.components == 2);
  CHECK_FALSE(same.single_cluster);

  const auto clustered = EdgeTable({{"A", "B"}, {"B", "C"}, {"C", "D"}});
  const auto cmp = CompareGraphs(real, clustered, "src", "dst");
  CHECK(cmp.single_cluster);
  REQUIRE(cmp.distance);
  CHECK(*cmp.distance > 0.0);

  const auto loops = EdgeTable({{"A", "A"}});
  const auto empty = CompareGraphs(real, loops, "src", "dst");
  CHECK_FALSE(empty.distance);
  CHECK_FALSE(empty.null_reason.empty());
  CHECK_THROWS_AS(CompareGraphs(real, real, "src", "missing"), ValidationError);
}

TEST_CASE("two halves of one dataset give a small positive distance") {
  Rng rng(14);
  std::vector<std::pair<std::string, std::string>> a, b;
  for (int i = 0; i < 4000; ++i) {
    auto e = std::make_pair("u" + std::to_string(rng.UniformIndex(300)),
                            "m" + std::to_string(rng.UniformIndex(60)));
    (i % 2 ? a : b).push_back(e);
  }
  const auto cmp = CompareGraphs(EdgeTable(a), EdgeTable(b), "src", "dst");
  REQUIRE(cmp.distance);
  CHECK(*cmp.distance > 0.0);
  CHECK(*cmp.distance < 5.0);
}
