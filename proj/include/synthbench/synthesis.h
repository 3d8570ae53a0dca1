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

#ifndef SYNTHBENCH_SYNTHESIS_H_
#define SYNTHBENCH_SYNTHESIS_H_

#include "synthbench/tabular.h"

namespace synthbench {

struct SynthesisConfig {
  // Per-column tolerance as a fraction of the real column's range.
  double margin_fraction = 0.01;
};

// Fraction of synthetic rows that replicate no real row. A synthetic row s
// replicates real row r when every numeric column satisfies
// |s_c - r_c| <= margin_fraction * (max_c - min_c) over the real column and
// every categorical column matches exactly.
//
// Candidates are pruned by grouping real rows on their categorical values and
// binary-searching one numeric column; the result equals the full pairwise
// check.
double SynthesisScore(const DataTable& real, const DataTable& synth,
                      const SynthesisConfig& config = {});

}  // namespace synthbench

#endif  // SYNTHBENCH_SYNTHESIS_H_
