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

#include "synthbench/fidelity.h"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_map>

#include "synthbench/error.h"
#include "synthbench/parallel.h"

namespace synthbench {
namespace {

void CheckComparable(const DataTable& real, const DataTable& synth) {
  if (!(real.schema() == synth.schema())) {
    throw ValidationError("real and synthetic schemas differ");
  }
  if (real.row_count() == 0 || synth.row_count() == 0) {
    throw ValidationError("fidelity needs non-empty tables");
  }
}

std::vector<double> CategoryFrequencies(const CategoricalColumn& col) {
  std::vector<double> freq(col.dictionary.size(), 0.0);
  for (auto code : col.codes) freq[code] += 1.0;
  for (auto& f : freq) f /= static_cast<double>(col.codes.size());
  return freq;
}

}  // namespace

double KsStatistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw ValidationError("KS statistic needs non-empty samples");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());

  // Walk the merged support; at each distinct value, advance both samples
  // past it so the ECDFs are compared at their right-continuous values.
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double x;
    if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j])) {
      x = sa[i];
    } else {
      x = sb[j];
    }
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
  }
  return sup;
}

double TotalVariation(const CategoricalColumn& a, const CategoricalColumn& b) {
  if (a.codes.empty() || b.codes.empty()) {
    throw ValidationError("total variation needs non-empty columns");
  }
  const auto fa = CategoryFrequencies(a);
  const auto fb = CategoryFrequencies(b);

  std::unordered_map<std::string_view, std::size_t> b_index;
  for (std::size_t k = 0; k < b.dictionary.size(); ++k) {
    b_index.emplace(b.dictionary[k], k);
  }
  std::vector<bool> b_seen(b.dictionary.size(), false);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.dictionary.size(); ++k) {
    double pb = 0.0;
    if (auto it = b_index.find(a.dictionary[k]); it != b_index.end()) {
      pb = fb[it->second];
      b_seen[it->second] = true;
    }
    sum += std::abs(fa[k] - pb);
  }
  for (std::size_t k = 0; k < b.dictionary.size(); ++k) {
    if (!b_seen[k]) sum += fb[k];
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double PearsonCorrelation(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("correlation needs equal-length columns");
  }
  if (x.size() < 2) return 0.0;
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ColumnFidelity ComputeColumnFidelity(const DataTable& real,
                                     const DataTable& synth) {
  CheckComparable(real, synth);
  const auto& schema = real.schema();
  ColumnFidelity out;
  out.per_column.resize(schema.size());
  ParallelFor(schema.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      double score;
      if (schema.column(c).kind == ColumnKind::kNumeric) {
        score = 1.0 - KsStatistic(real.numeric(c), synth.numeric(c));
      } else {
        score = 1.0 - TotalVariation(real.categorical(c), synth.categorical(c));
      }
      out.per_column[c] = {schema.column(c).name, score};
    }
  });
  double sum = 0.0;
  for (const auto& s : out.per_column) sum += s.score;
  out.mean = sum / static_cast<double>(out.per_column.size());
  return out;
}

RowFidelity ComputeRowFidelity(const DataTable& real, const DataTable& synth) {
  CheckComparable(real, synth);
  const auto numeric = real.schema().NumericIndices();
  RowFidelity out;
  if (numeric.size() < 2) {
    out.undefined_reason = "fewer than two numeric columns";
    return out;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    for (std::size_t j = i + 1; j < numeric.size(); ++j) {
      pairs.emplace_back(numeric[i], numeric[j]);
    }
  }
  out.per_pair.resize(pairs.size());
  ParallelFor(pairs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const auto [a, b] = pairs[p];
      PairScore s;
      s.first = real.schema().column(a).name;
      s.second = real.schema().column(b).name;
      s.real_correlation = PearsonCorrelation(real.numeric(a), real.numeric(b));
      s.synthetic_correlation =
          PearsonCorrelation(synth.numeric(a), synth.numeric(b));
      s.score = 1.0 - std::abs(s.real_correlation - s.synthetic_correlation) / 2.0;
      out.per_pair[p] = std::move(s);
    }
  });
  double sum = 0.0;
  for (const auto& s : out.per_pair) sum += s.score;
  out.mean = sum / static_cast<double>(out.per_pair.size());
  return out;
}

FidelityScores ComputeFidelity(const DataTable& real, const DataTable& synth) {
  return {ComputeColumnFidelity(real, synth), ComputeRowFidelity(real, synth)};
}

}  // namespace synthbench
