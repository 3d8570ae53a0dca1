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

#include "synthbench/nn_index.h"

#include <algorithm>

#include "synthbench/error.h"

namespace synthbench {

NearestNeighborIndex::NearestNeighborIndex(const DistanceEmbedding& points,
                                           std::size_t leaf_size)
    : points_(&points), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  if (points.rows() == 0) {
    throw ValidationError("cannot index an empty point set");
  }
  order_.resize(points.rows());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  nodes_.reserve(2 * points.rows() / leaf_size_ + 1);
  Build(0, points.rows());
}

std::size_t NearestNeighborIndex::Build(std::size_t begin, std::size_t end) {
  const std::size_t id = nodes_.size();
  nodes_.push_back({begin, end, -1, -1});
  const std::size_t nd = points_->numeric_dims();
  const std::size_t cd = points_->categorical_dims();
  num_lo_.resize((id + 1) * nd);
  num_hi_.resize((id + 1) * nd);
  code_lo_.resize((id + 1) * cd);
  code_hi_.resize((id + 1) * cd);

  for (std::size_t j = 0; j < nd; ++j) {
    double lo = points_->numeric_row(order_[begin])[j];
    double hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const double v = points_->numeric_row(order_[i])[j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    num_lo_[id * nd + j] = lo;
    num_hi_[id * nd + j] = hi;
  }
  for (std::size_t j = 0; j < cd; ++j) {
    std::uint32_t lo = points_->code_row(order_[begin])[j];
    std::uint32_t hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const auto v = points_->code_row(order_[i])[j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    code_lo_[id * cd + j] = lo;
    code_hi_[id * cd + j] = hi;
  }
  if (end - begin <= leaf_size_) return id;

  // Widest numeric axis; a categorical axis with more than one code counts
  // as spread 0.5 so wide numeric axes are preferred.
  double best_spread = 0.0;
  std::size_t best_axis = 0;
  bool categorical_axis = false;
  for (std::size_t j = 0; j < nd; ++j) {
    const double spread = num_hi_[id * nd + j] - num_lo_[id * nd + j];
    if (spread > best_spread) {
      best_spread = spread;
      best_axis = j;
    }
  }
  for (std::size_t j = 0; j < cd; ++j) {
    if (code_hi_[id * cd + j] > code_lo_[id * cd + j] && 0.5 > best_spread) {
      best_spread = 0.5;
      best_axis = j;
      categorical_axis = true;
    }
  }
  if (best_spread <= 0.0) return id;  // all points coincide

  const std::size_t mid = begin + (end - begin) / 2;
  auto first = order_.begin() + static_cast<std::ptrdiff_t>(begin);
  auto nth = order_.begin() + static_cast<std::ptrdiff_t>(mid);
  auto last = order_.begin() + static_cast<std::ptrdiff_t>(end);
  if (categorical_axis) {
    std::nth_element(first, nth, last, [&](std::size_t a, std::size_t b) {
      return points_->code_row(a)[best_axis] < points_->code_row(b)[best_axis];
    });
  } else {
    std::nth_element(first, nth, last, [&](std::size_t a, std::size_t b) {
      return points_->numeric_row(a)[best_axis] <
             points_->numeric_row(b)[best_axis];
    });
  }
  const std::size_t left = Build(begin, mid);
  const std::size_t right = Build(mid, end);
  nodes_[id].left = static_cast<std::int64_t>(left);
  nodes_[id].right = static_cast<std::int64_t>(right);
  return id;
}

double NearestNeighborIndex::LowerBound(
    std::size_t node, std::span<const double> qn,
    std::span<const std::uint32_t> qc) const {
  const std::size_t nd = qn.size();
  const std::size_t cd = qc.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < nd; ++j) {
    const double lo = num_lo_[node * nd + j];
    const double hi = num_hi_[node * nd + j];
    double d = 0.0;
    if (qn[j] < lo) {
      d = lo - qn[j];
    } else if (qn[j] > hi) {
      d = qn[j] - hi;
    }
    acc += d * d;
  }
  for (std::size_t j = 0; j < cd; ++j) {
    if (qc[j] < code_lo_[node * cd + j] || qc[j] > code_hi_[node * cd + j]) {
      acc += 1.0;
    }
  }
  return acc;
}

void NearestNeighborIndex::Search(std::size_t node,
                                  const DistanceEmbedding& queries,
                                  std::size_t q, TwoNearest& best) const {
  const Node& n = nodes_[node];
  if (n.left < 0) {
    for (std::size_t i = n.begin; i < n.end; ++i) {
      best.Offer(SquaredDistance(queries, q, *points_, order_[i]));
    }
    return;
  }
  const auto qn = queries.numeric_row(q);
  const auto qc = queries.code_row(q);
  auto near = static_cast<std::size_t>(n.left);
  auto far = static_cast<std::size_t>(n.right);
  double near_lb = LowerBound(near, qn, qc);
  double far_lb = LowerBound(far, qn, qc);
  if (far_lb < near_lb) {
    std::swap(near, far);
    std::swap(near_lb, far_lb);
  }
  if (near_lb < best.d2_squared) Search(near, queries, q, best);
  if (far_lb < best.d2_squared) Search(far, queries, q, best);
}

TwoNearest NearestNeighborIndex::Query(const DistanceEmbedding& queries,
                                       std::size_t q) const {
  if (queries.numeric_dims() != points_->numeric_dims() ||
      queries.categorical_dims() != points_->categorical_dims()) {
    throw ValidationError("query dimension does not match the index");
  }
  TwoNearest best;
  Search(0, queries, q, best);
  return best;
}

}  // namespace synthbench
