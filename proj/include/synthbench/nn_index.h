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

#ifndef SYNTHBENCH_NN_INDEX_H_
#define SYNTHBENCH_NN_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "synthbench/tabular.h"

namespace synthbench {

// Squared distances to the two nearest indexed points. d2_squared is +inf
// when the index holds a single point.
struct TwoNearest {
  double d1_squared = std::numeric_limits<double>::infinity();
  double d2_squared = std::numeric_limits<double>::infinity();

  void Offer(double d) {
    if (d < d1_squared) {
      d2_squared = d1_squared;
      d1_squared = d;
    } else if (d < d2_squared) {
      d2_squared = d;
    }
  }
};

// Exact kd-tree over a DistanceEmbedding. Numeric axes bound the distance in
// the usual way; a categorical axis contributes 1 to a node's lower bound
// when the query code lies outside the node's code range. The lower bound
// accumulates in the same order as SquaredDistance, so pruning never drops a
// point whose computed distance could change the result: Query returns the
// same doubles as a linear scan.
class NearestNeighborIndex {
 public:
  // `points` must outlive the index.
  explicit NearestNeighborIndex(const DistanceEmbedding& points,
                                std::size_t leaf_size = 16);

  TwoNearest Query(const DistanceEmbedding& queries, std::size_t q) const;

  std::size_t size() const { return points_->rows(); }

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::int64_t left = -1;
    std::int64_t right = -1;
  };

  std::size_t Build(std::size_t begin, std::size_t end);
  double LowerBound(std::size_t node, std::span<const double> qn,
                    std::span<const std::uint32_t> qc) const;
  void Search(std::size_t node, const DistanceEmbedding& queries,
              std::size_t q, TwoNearest& best) const;

  const DistanceEmbedding* points_;
  std::size_t leaf_size_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::vector<double> num_lo_, num_hi_;
  std::vector<std::uint32_t> code_lo_, code_hi_;
};

}  // namespace synthbench

#endif  // SYNTHBENCH_NN_INDEX_H_
