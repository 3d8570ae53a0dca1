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

#ifndef SYNTHBENCH_TESTS_TEST_UTIL_H_
#define SYNTHBENCH_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.h"
#include "synthbench/rng.h"
#include "synthbench/tabular.h"

namespace testing {

using synthbench::ColumnKind;
using synthbench::ColumnSpec;
using synthbench::DataTable;
using synthbench::TableBuilder;
using synthbench::TableSchema;

inline constexpr ColumnKind kNum = ColumnKind::kNumeric;
inline constexpr ColumnKind kCat = ColumnKind::kCategorical;

inline TableSchema Schema(
    std::initializer_list<std::pair<const char*, ColumnKind>> cols) {
  std::vector<ColumnSpec> specs;
  for (const auto& [name, kind] : cols) specs.push_back({name, kind});
  return TableSchema(std::move(specs));
}

inline DataTable Table(const TableSchema& schema,
                       const std::vector<std::vector<std::string>>& rows) {
  TableBuilder b(schema);
  for (const auto& row : rows) {
    std::vector<std::string_view> cells(row.begin(), row.end());
    if (!b.AddRow(cells)) throw std::runtime_error("bad fixture row");
  }
  return std::move(b).Build();
}

inline DataTable NumericTable(const std::vector<std::vector<double>>& cols) {
  std::vector<ColumnSpec> specs;
  std::vector<synthbench::Column> data;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    specs.push_back({"x" + std::to_string(j), kNum});
    data.emplace_back(cols[j]);
  }
  return DataTable(TableSchema(std::move(specs)), std::move(data));
}

inline std::string Num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Random table with `nd` numeric and `cd` categorical columns. Numeric
// values are drawn on a coarse grid so ties are common.
inline DataTable RandomMixedTable(synthbench::Rng& rng, std::size_t rows,
                                  std::size_t nd, std::size_t cd,
                                  std::size_t levels = 4,
                                  double grid = 0.25) {
  std::vector<ColumnSpec> specs;
  for (std::size_t j = 0; j < nd; ++j) specs.push_back({"n" + std::to_string(j), kNum});
  for (std::size_t j = 0; j < cd; ++j) specs.push_back({"c" + std::to_string(j), kCat});
  TableBuilder b{TableSchema(specs)};
  std::vector<std::string> row(nd + cd);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < nd; ++j) {
      const double v = std::round(rng.Normal() * 4.0) * grid + 10.0 * j;
      row[j] = Num(v);
    }
    for (std::size_t j = 0; j < cd; ++j) {
      row[nd + j] = "L" + std::to_string(rng.UniformIndex(levels));
    }
    std::vector<std::string_view> cells(row.begin(), row.end());
    b.AddRow(cells);
  }
  return std::move(b).Build();
}

// Unique rows: the first numeric column (if any) is the row index, else the
// categorical columns spell the index in base `levels`.
inline DataTable UniqueFixture(std::size_t rows, bool numeric, bool categorical,
                               std::uint64_t seed) {
  synthbench::Rng rng(seed);
  std::vector<ColumnSpec> specs;
  if (numeric) {
    specs.push_back({"amount", kNum});
    specs.push_back({"age", kNum});
    specs.push_back({"id", kNum});
  }
  if (categorical) {
    specs.push_back({"src", kCat});
    specs.push_back({"dst", kCat});
    specs.push_back({"kind", kCat});
  }
  TableBuilder b{TableSchema(specs)};
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    if (numeric) {
      const double a = 100.0 + 20.0 * rng.Normal();
      row.push_back(Num(a));
      row.push_back(Num(std::round(a / 3.0 + 3.0 * rng.Normal())));
      row.push_back(Num(static_cast<double>(r)));
    }
    if (categorical) {
      // src/dst spell the row index so rows are unique without a numeric id.
      row.push_back("u" + std::to_string(r % 40));
      row.push_back("m" + std::to_string(r / 40));
      row.push_back(std::string(1, static_cast<char>('a' + rng.UniformIndex(3))));
    }
    std::vector<std::string_view> cells(row.begin(), row.end());
    b.AddRow(cells);
  }
  return std::move(b).Build();
}

// Table with columns x, y (corr(x, y) = rho), z (independent numeric) and a
// categorical column k.
inline DataTable CorrelatedTable(std::size_t n, double rho, std::uint64_t seed) {
  synthbench::Rng rng(seed);
  std::vector<double> x(n), y(n), z(n);
  synthbench::CategoricalColumn k{{"a", "b", "c"}, std::vector<std::uint32_t>(n)};
  const double s = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.Normal();
    const double v = rng.Normal();
    x[i] = 50.0 + 10.0 * u;
    y[i] = 5.0 * (rho * u + s * v);
    z[i] = rng.Uniform01() * 1000.0;
    k.codes[i] = static_cast<std::uint32_t>(rng.UniformIndex(3));
  }
  std::vector<synthbench::Column> cols;
  cols.emplace_back(std::move(x));
  cols.emplace_back(std::move(y));
  cols.emplace_back(std::move(z));
  cols.emplace_back(std::move(k));
  return DataTable(Schema({{"x", kNum}, {"y", kNum}, {"z", kNum}, {"k", kCat}}),
                   std::move(cols));
}

inline oracle::Point ToPoint(const synthbench::DistanceEmbedding& e,
                             std::size_t i) {
  const auto x = e.numeric_row(i);
  const auto c = e.code_row(i);
  return {std::vector<double>(x.begin(), x.end()),
          std::vector<std::uint32_t>(c.begin(), c.end())};
}

inline std::vector<oracle::MixedRow> ToMixedRows(const DataTable& t) {
  std::vector<oracle::MixedRow> rows(t.row_count());
  for (std::size_t c = 0; c < t.column_count(); ++c) {
    for (std::size_t r = 0; r < t.row_count(); ++r) {
      if (t.schema().column(c).kind == kNum) {
        rows[r].x.push_back(t.numeric(c)[r]);
      } else {
        rows[r].c.emplace_back(t.category(c, r));
      }
    }
  }
  return rows;
}

inline void WriteFile(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace testing

#endif  // SYNTHBENCH_TESTS_TEST_UTIL_H_
