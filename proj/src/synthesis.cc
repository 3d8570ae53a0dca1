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

#include "synthbench/synthesis.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>

#include "synthbench/error.h"
#include "synthbench/parallel.h"

namespace synthbench {
namespace {

constexpr std::uint32_t kNoMatch = std::numeric_limits<std::uint32_t>::max();

std::string PackKey(std::span<const std::uint32_t> codes) {
  std::string key(codes.size() * sizeof(std::uint32_t), '\0');
  if (!codes.empty()) std::memcpy(key.data(), codes.data(), key.size());
  return key;
}

struct RowGroup {
  std::vector<std::size_t> rows;  // sorted by pivot value
  std::vector<double> pivot;      // pivot value of each row
};

}  // namespace

double SynthesisScore(const DataTable& real, const DataTable& synth,
                      const SynthesisConfig& config) {
  if (!(config.margin_fraction >= 0.0 && config.margin_fraction < 1.0)) {
    throw ValidationError("margin fraction must be in [0, 1)");
  }
  if (!(real.schema() == synth.schema())) {
    throw ValidationError("real and synthetic schemas differ");
  }
  if (real.row_count() == 0 || synth.row_count() == 0) {
    throw ValidationError("synthesis score needs non-empty tables");
  }

  const auto numeric = real.schema().NumericIndices();
  const auto categorical = real.schema().CategoricalIndices();

  std::vector<double> tolerance;
  std::size_t pivot_slot = 0;
  std::size_t best_distinct = 0;
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    std::vector<double> sorted = real.numeric(numeric[k]);
    std::sort(sorted.begin(), sorted.end());
    tolerance.push_back(config.margin_fraction * (sorted.back() - sorted.front()));
    const auto distinct = static_cast<std::size_t>(
        std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    if (distinct > best_distinct) {
      best_distinct = distinct;
      pivot_slot = k;
    }
  }

  // Synthetic category codes translated into the real dictionaries.
  std::vector<std::vector<std::uint32_t>> synth_to_real(categorical.size());
  for (std::size_t k = 0; k < categorical.size(); ++k) {
    const auto& rc = real.categorical(categorical[k]);
    const auto& sc = synth.categorical(categorical[k]);
    std::unordered_map<std::string_view, std::uint32_t> index;
    for (std::size_t i = 0; i < rc.dictionary.size(); ++i) {
      index.emplace(rc.dictionary[i], static_cast<std::uint32_t>(i));
    }
    synth_to_real[k].assign(sc.dictionary.size(), kNoMatch);
    for (std::size_t i = 0; i < sc.dictionary.size(); ++i) {
      if (auto it = index.find(sc.dictionary[i]); it != index.end()) {
        synth_to_real[k][i] = it->second;
      }
    }
  }

  std::unordered_map<std::string, RowGroup> groups;
  std::vector<std::uint32_t> key_codes(categorical.size());
  for (std::size_t r = 0; r < real.row_count(); ++r) {
    for (std::size_t k = 0; k < categorical.size(); ++k) {
      key_codes[k] = real.categorical(categorical[k]).codes[r];
    }
    groups[PackKey(key_codes)].rows.push_back(r);
  }
  if (!numeric.empty()) {
    const auto& pivot_col = real.numeric(numeric[pivot_slot]);
    for (auto& [key, group] : groups) {
      std::stable_sort(group.rows.begin(), group.rows.end(),
                       [&](std::size_t a, std::size_t b) {
                         return pivot_col[a] < pivot_col[b];
                       });
      group.pivot.reserve(group.rows.size());
      for (auto r : group.rows) group.pivot.push_back(pivot_col[r]);
    }
  }

  std::atomic<std::size_t> novel_total{0};
  ParallelFor(synth.row_count(), [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> codes(categorical.size());
    std::size_t novel = 0;
    for (std::size_t s = begin; s < end; ++s) {
      bool unseen_category = false;
      for (std::size_t k = 0; k < categorical.size(); ++k) {
        codes[k] = synth_to_real[k][synth.categorical(categorical[k]).codes[s]];
        unseen_category |= codes[k] == kNoMatch;
      }
      const auto it = unseen_category ? groups.end() : groups.find(PackKey(codes));
      if (it == groups.end()) {
        ++novel;
        continue;
      }
      const RowGroup& group = it->second;
      if (numeric.empty()) continue;  // categorical match is a replication

      const double sv = synth.numeric(numeric[pivot_slot])[s];
      const double tol = tolerance[pivot_slot];
      // Widened window: only ever admits extra candidates, each of which is
      // checked with the exact predicate below.
      const double slack = (std::abs(sv) + tol) * 1e-12;
      auto lo = std::lower_bound(group.pivot.begin(), group.pivot.end(),
                                 sv - tol - slack);
      const double hi = sv + tol + slack;
      bool replicated = false;
      for (; lo != group.pivot.end() && *lo <= hi && !replicated; ++lo) {
        const std::size_t r = group.rows[lo - group.pivot.begin()];
        bool all_within = true;
        for (std::size_t k = 0; k < numeric.size() && all_within; ++k) {
          const double d = synth.numeric(numeric[k])[s] - real.numeric(numeric[k])[r];
          all_within = std::abs(d) <= tolerance[k];
        }
        replicated = all_within;
      }
      if (!replicated) ++novel;
    }
    novel_total += novel;
  });
  return static_cast<double>(novel_total.load()) /
         static_cast<double>(synth.row_count());
}

}  // namespace synthbench
