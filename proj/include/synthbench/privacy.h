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

#ifndef SYNTHBENCH_PRIVACY_H_
#define SYNTHBENCH_PRIVACY_H_

#include <cstddef>
#include <vector>

#include "synthbench/tabular.h"

namespace synthbench {

struct PrivacyConfig {
  double percentile = 5.0;  // percent, in (0, 100)
};

struct PrivacyScores {
  double dcr_p = 0.0;   // distance units of the normalized embedding
  double nndr_p = 0.0;  // in [0, 1]
};

// Per-synthetic-row distributions, in synthetic row order.
struct PrivacyDistributions {
  std::vector<double> dcr;
  std::vector<double> nndr;
};

// Distance from query row q to its nearest row of `real` (linear scan).
double Dcr(const DistanceEmbedding& queries, std::size_t q,
           const DistanceEmbedding& real);

// d1 / d2 over the two nearest rows of `real` (linear scan); needs at least
// two real rows.
double Nndr(const DistanceEmbedding& queries, std::size_t q,
            const DistanceEmbedding& real);

// Ratio from the two smallest squared distances: 1 when d1 == d2 (including
// both zero), 0 when only d1 is zero, d1 / d2 otherwise.
double NndrFromSquared(double d1_squared, double d2_squared);

// Percentile with linear interpolation between closest ranks: position
// (n - 1) * percent / 100 in the sorted values.
double Percentile(std::vector<double> values, double percent);

// DCR and NNDR of every synthetic row, found through the kd-tree index.
PrivacyDistributions ComputePrivacyDistributions(
    const DistanceEmbedding& real, const DistanceEmbedding& synth);

// Embeds both tables with `params`, then reports the configured percentile
// of the DCR and NNDR distributions. `real` needs at least two rows.
PrivacyScores ComputePrivacyScores(const DataTable& real,
                                   const DataTable& synth,
                                   const NormalizationParams& params,
                                   const PrivacyConfig& config = {});

}  // namespace synthbench

#endif  // SYNTHBENCH_PRIVACY_H_
