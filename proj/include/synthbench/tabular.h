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

#ifndef SYNTHBENCH_TABULAR_H_
#define SYNTHBENCH_TABULAR_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace synthbench {

enum class ColumnKind { kNumeric, kCategorical };

const char* ToString(ColumnKind kind);
std::optional<ColumnKind> ParseColumnKind(std::string_view text);

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;

  bool operator==(const ColumnSpec&) const = default;
};

// Ordered, named, typed columns. Construction enforces at least one column,
// non-empty names and no duplicates.
class TableSchema {
 public:
  TableSchema() = default;
  explicit TableSchema(std::vector<ColumnSpec> columns);

  const std::vector<ColumnSpec>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }
  const ColumnSpec& column(std::size_t i) const { return columns_.at(i); }
  std::optional<std::size_t> IndexOf(std::string_view name) const;

  std::vector<std::size_t> NumericIndices() const;
  std::vector<std::size_t> CategoricalIndices() const;

  bool operator==(const TableSchema& other) const {
    return columns_ == other.columns_;
  }

 private:
  std::vector<ColumnSpec> columns_;
};

using NumericColumn = std::vector<double>;

// Codes index into `dictionary`. The dictionary may hold categories that no
// row uses (e.g. after selecting a subset of rows).
struct CategoricalColumn {
  std::vector<std::string> dictionary;
  std::vector<std::uint32_t> codes;

  bool operator==(const CategoricalColumn&) const = default;
};

using Column = std::variant<NumericColumn, CategoricalColumn>;

// Immutable columnar table. Every column holds row_count() entries, numeric
// cells are finite, and categorical codes are in range; the constructor
// throws ValidationError otherwise.
class DataTable {
 public:
  DataTable(TableSchema schema, std::vector<Column> columns);

  const TableSchema& schema() const { return schema_; }
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }

  const Column& column(std::size_t i) const { return columns_.at(i); }
  const NumericColumn& numeric(std::size_t i) const;
  const CategoricalColumn& categorical(std::size_t i) const;
  std::string_view category(std::size_t col, std::size_t row) const;

  // Text form of a cell, as it would be written to CSV.
  std::string CellText(std::size_t col, std::size_t row) const;

  // Rows in the given order (repeats allowed). Dictionaries are kept as is.
  DataTable SelectRows(std::span<const std::size_t> rows) const;

  bool operator==(const DataTable&) const = default;

 private:
  TableSchema schema_;
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

// Accumulates rows given as text cells. Categories are coded in order of
// first appearance, so identical input yields an identical table.
class TableBuilder {
 public:
  explicit TableBuilder(TableSchema schema);

  // Appends the row when every cell is present and parses for its column
  // kind; returns false and leaves the builder untouched otherwise.
  bool AddRow(std::span<const std::string_view> cells);
  bool AddRow(std::initializer_list<std::string_view> cells) {
    return AddRow(std::span<const std::string_view>(cells.begin(), cells.size()));
  }

  std::size_t row_count() const { return rows_; }
  DataTable Build() &&;

 private:
  TableSchema schema_;
  std::vector<Column> columns_;
  std::vector<std::unordered_map<std::string, std::uint32_t>> lookup_;
  std::vector<double> scratch_;
  std::size_t rows_ = 0;
};

// True for cells treated as missing: empty or whitespace-only, or one of
// NA, N/A, NaN, nan, null, NULL.
bool IsMissingCell(std::string_view cell);

// Locale-independent real parser: optional sign, decimal digits with
// optional fraction and exponent. Surrounding whitespace is ignored.
// Non-finite results are rejected.
std::optional<double> ParseReal(std::string_view cell);

// ---------------------------------------------------------------------------
// Ingestion

struct CsvOptions {
  char delimiter = ',';
};

inline constexpr std::size_t kDefaultInferenceRows = 10000;

struct LoadResult {
  DataTable table;
  std::size_t dropped_rows = 0;
};

// Loads a delimited text table with a header row. Rows with any missing or
// unparseable cell are dropped and counted. Without an override the schema
// is inferred from the first kDefaultInferenceRows rows. The override, when
// given, must name exactly the header columns in header order.
LoadResult LoadTable(const std::filesystem::path& path,
                     const std::optional<TableSchema>& schema_override = {},
                     const CsvOptions& options = {});

// A column is numeric iff every non-missing sampled cell parses as a real;
// a column with no non-missing sampled cell is categorical.
TableSchema InferSchema(const std::filesystem::path& path,
                        std::size_t sample_rows = kDefaultInferenceRows,
                        const CsvOptions& options = {});

// Schema override files hold one `name: numeric|categorical` pair per line.
// Blank lines and lines starting with '#' are ignored.
std::map<std::string, ColumnKind> ReadSchemaOverrides(
    const std::filesystem::path& path);
std::map<std::string, ColumnKind> ParseSchemaOverrides(std::string_view text);

// Replaces the kinds of the named columns; unknown names are an error.
TableSchema ApplyOverrides(const TableSchema& schema,
                           const std::map<std::string, ColumnKind>& overrides);

void WriteTable(const DataTable& table, const std::filesystem::path& path,
                const CsvOptions& options = {});
std::string ToCsv(const DataTable& table, const CsvOptions& options = {});

// ---------------------------------------------------------------------------
// Normalization and distance encoding

struct ColumnParams {
  ColumnKind kind = ColumnKind::kNumeric;
  double min = 0.0;  // numeric only
  double max = 0.0;  // numeric only
  std::vector<std::string> categories;  // categorical only

  bool operator==(const ColumnParams&) const = default;
};

// Fitted on the real table; applied to both real and synthetic tables.
struct NormalizationParams {
  TableSchema schema;
  std::vector<ColumnParams> columns;

  bool operator==(const NormalizationParams&) const = default;
};

NormalizationParams FitNormalization(const DataTable& real);

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
};

// Numeric cells map to (x - min) / (max - min) clamped to [0, 1] (0 for a
// constant column). A categorical column with K real categories becomes
// K + 1 one-hot positions scaled by 1/sqrt(2); the last position stands for
// categories unseen in the real table. Two rows thus differ by exactly 1 in
// squared distance per mismatched categorical column.
DenseMatrix EncodeForDistance(const DataTable& table,
                              const NormalizationParams& params);

// Compact equivalent of EncodeForDistance used by the nearest-neighbour
// search: normalized numeric coordinates plus one category code per
// categorical column (unseen categories get code K).
class DistanceEmbedding {
 public:
  DistanceEmbedding() = default;
  DistanceEmbedding(std::size_t rows, std::size_t numeric_dims,
                    std::size_t categorical_dims, std::vector<double> numeric,
                    std::vector<std::uint32_t> codes);

  // Numeric-only embedding, row-major.
  static DistanceEmbedding FromNumeric(std::size_t rows, std::size_t dims,
                                       std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t numeric_dims() const { return numeric_dims_; }
  std::size_t categorical_dims() const { return categorical_dims_; }

  std::span<const double> numeric_row(std::size_t i) const {
    return {numeric_.data() + i * numeric_dims_, numeric_dims_};
  }
  std::span<const std::uint32_t> code_row(std::size_t i) const {
    return {codes_.data() + i * categorical_dims_, categorical_dims_};
  }

  // Adds `offset` to every numeric coordinate (offset size = numeric_dims).
  DistanceEmbedding Translated(std::span<const double> offset) const;

 private:
  std::size_t rows_ = 0;
  std::size_t numeric_dims_ = 0;
  std::size_t categorical_dims_ = 0;
  std::vector<double> numeric_;
  std::vector<std::uint32_t> codes_;
};

DistanceEmbedding EmbedForDistance(const DataTable& table,
                                   const NormalizationParams& params);

// Squared distance between row `a` of `x` and row `b` of `y`: numeric squared
// differences summed in column order, then 1.0 per categorical mismatch.
// Every distance in the library goes through this accumulation order.
double SquaredDistance(const DistanceEmbedding& x, std::size_t a,
                       const DistanceEmbedding& y, std::size_t b);

}  // namespace synthbench

#endif  // SYNTHBENCH_TABULAR_H_
