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

#include "synthbench/privacy.h"

#include <algorithm>
#include <cmath>

#include "synthbench/error.h"
#include "synthbench/nn_index.h"
#include "synthbench/parallel.h"

namespace synthbench {
namespace {

void CheckDims(const DistanceEmbedding& a, const DistanceEmbedding& b) {
  if (a.numeric_dims() != b.numeric_dims() ||
      a.categorical_dims() != b.categorical_dims()) {
    throw ValidationError("embedding dimension mismatch");
  }
}

TwoNearest Scan(const DistanceEmbedding& queries, std::size_t q,
                const DistanceEmbedding& real) {
  CheckDims(queries, real);
  if (q >= queries.rows()) throw ValidationError("query row out of range");
  TwoNearest best;
  for (std::size_t r = 0; r < real.rows(); ++r) {
    best.Offer(SquaredDistance(queries, q, real, r));
  }
  return best;
}

}  // namespace

double Dcr(const DistanceEmbedding& queries, std::size_t q,
           const DistanceEmbedding& real) {
  if (real.rows() == 0) throw ValidationError("DCR needs at least one real row");
  return std::sqrt(Scan(queries, q, real).d1_squared);
}

double Nndr(const DistanceEmbedding& queries, std::size_t q,
            const DistanceEmbedding& real) {
  if (real.rows() < 2) throw ValidationError("NNDR needs at least two real rows");
  const auto best = Scan(queries, q, real);
  return NndrFromSquared(best.d1_squared, best.d2_squared);
}

double NndrFromSquared(double d1_squared, double d2_squared) {
  const double d1 = std::sqrt(d1_squared);
  const double d2 = std::sqrt(d2_squared);
  if (d1 == d2) return 1.0;
  if (d1 == 0.0) return 0.0;
  return std::clamp(d1 / d2, 0.0, 1.0);
}

double Percentile(std::vector<double> values, double percent) {
  if (values.empty()) throw ValidationError("percentile of an empty sample");
  if (!(percent > 0.0 && percent < 100.0)) {
    throw ValidationError("percentile must be in (0, 100)");
  }
  std::sort(values.begin(), values.end());
  const double pos = static_cast<double>(values.size() - 1) * percent / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

PrivacyDistributions ComputePrivacyDistributions(
    const DistanceEmbedding& real, const DistanceEmbedding& synth) {
  CheckDims(real, synth);
  if (real.rows() < 2) {
    throw ValidationError("privacy metrics need at least two real rows");
  }
  const NearestNeighborIndex index(real);
  PrivacyDistributions out;
  out.dcr.resize(synth.rows());
  out.nndr.resize(synth.rows());
  ParallelFor(synth.rows(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto best = index.Query(synth, s);
      out.dcr[s] = std::sqrt(best.d1_squared);
      out.nndr[s] = NndrFromSquared(best.d1_squared, best.d2_squared);
    }
  });
  return out;
}

PrivacyScores ComputePrivacyScores(const DataTable& real,
                                   const DataTable& synth,
                                   const NormalizationParams& params,
                                   const PrivacyConfig& config) {
  if (!(config.percentile > 0.0 && config.percentile < 100.0)) {
    throw ValidationError("percentile must be in (0, 100)");
  }
  if (!(real.schema() == synth.schema())) {
    throw ValidationError("real and synthetic schemas differ");
  }
  if (real.row_count() < 2) {
    throw ValidationError("privacy metrics need at least two real rows");
  }
  if (synth.row_count() == 0) {
    throw ValidationError("privacy metrics need a non-empty synthetic table");
  }
  const auto real_emb = EmbedForDistance(real, params);
  const auto synth_emb = EmbedForDistance(synth, params);
  auto dist = ComputePrivacyDistributions(real_emb, synth_emb);
  return {Percentile(std::move(dist.dcr), config.percentile),
          Percentile(std::move(dist.nndr), config.percentile)};
}

}  // namespace synthbench
