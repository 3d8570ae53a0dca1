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

#ifndef SYNTHBENCH_FIDELITY_H_
#define SYNTHBENCH_FIDELITY_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "synthbench/tabular.h"

namespace synthbench {

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|, evaluated
// exactly on the merged sorted support. Throws ValidationError if either
// sample is empty.
double KsStatistic(std::span<const double> a, std::span<const double> b);

// Total variation distance between the empirical category distributions of
// two categorical columns, matched by category text.
double TotalVariation(const CategoricalColumn& a, const CategoricalColumn& b);

// Sample Pearson correlation; 0 when either column has zero variance.
double PearsonCorrelation(std::span<const double> x, std::span<const double> y);

struct ColumnScore {
  std::string column;
  double score = 0.0;

  bool operator==(const ColumnScore&) const = default;
};

struct PairScore {
  std::string first;
  std::string second;
  double real_correlation = 0.0;
  double synthetic_correlation = 0.0;
  double score = 0.0;

  bool operator==(const PairScore&) const = default;
};

struct ColumnFidelity {
  std::vector<ColumnScore> per_column;  // schema order
  double mean = 0.0;
};

// Row-wise fidelity is undefined for fewer than two numeric columns; `mean`
// is then empty and `undefined_reason` says why.
struct RowFidelity {
  std::vector<PairScore> per_pair;  // (i, j), i < j, in schema order
  std::optional<double> mean;
  std::string undefined_reason;
};

struct FidelityScores {
  ColumnFidelity column_wise;
  RowFidelity row_wise;
};

// Numeric columns score 1 - KS; categorical columns score 1 - TV.
ColumnFidelity ComputeColumnFidelity(const DataTable& real,
                                     const DataTable& synth);

// Each unordered numeric pair scores 1 - |rho_real - rho_synth| / 2.
RowFidelity ComputeRowFidelity(const DataTable& real, const DataTable& synth);

FidelityScores ComputeFidelity(const DataTable& real, const DataTable& synth);

}  // namespace synthbench

#endif  // SYNTHBENCH_FIDELITY_H_
