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

#include "synthbench/tabular.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "synthbench/csv.h"
#include "synthbench/error.h"

namespace synthbench {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::vector<std::string> ReadHeader(CsvReader& reader,
                                    const std::filesystem::path& path) {
  std::vector<std::string> header;
  if (!reader.Next(header)) {
    throw ValidationError("'" + path.string() + "' is empty");
  }
  for (auto& name : header) name = std::string(Trim(name));
  return header;
}

}  // namespace

const char* ToString(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

std::optional<ColumnKind> ParseColumnKind(std::string_view text) {
  text = Trim(text);
  if (text == "numeric") return ColumnKind::kNumeric;
  if (text == "categorical") return ColumnKind::kCategorical;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TableSchema

TableSchema::TableSchema(std::vector<ColumnSpec> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw ValidationError("schema has no columns");
  std::unordered_set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (c.name.empty()) throw ValidationError("empty column name");
    if (!seen.insert(c.name).second) {
      throw ValidationError("duplicate column name '" + c.name + "'");
    }
  }
}

std::optional<std::size_t> TableSchema::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> TableSchema::NumericIndices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].kind == ColumnKind::kNumeric) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> TableSchema::CategoricalIndices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].kind == ColumnKind::kCategorical) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DataTable

DataTable::DataTable(TableSchema schema, std::vector<Column> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {
  if (schema_.size() == 0) throw ValidationError("schema has no columns");
  if (columns_.size() != schema_.size()) {
    throw ValidationError("column count does not match schema");
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    const auto& spec = schema_.column(i);
    std::size_t n = 0;
    if (spec.kind == ColumnKind::kNumeric) {
      const auto* col = std::get_if<NumericColumn>(&columns_[i]);
      if (col == nullptr) {
        throw ValidationError("column '" + spec.name + "' is not numeric");
      }
      for (double v : *col) {
        if (!std::isfinite(v)) {
          throw ValidationError("non-finite value in column '" + spec.name +
                                "'");
        }
      }
      n = col->size();
    } else {
      const auto* col = std::get_if<CategoricalColumn>(&columns_[i]);
      if (col == nullptr) {
        throw ValidationError("column '" + spec.name + "' is not categorical");
      }
      for (auto code : col->codes) {
        if (code >= col->dictionary.size()) {
          throw ValidationError("category code out of range in column '" +
                                spec.name + "'");
        }
      }
      n = col->codes.size();
    }
    if (i == 0) {
      row_count_ = n;
    } else if (n != row_count_) {
      throw ValidationError("column '" + spec.name + "' has " +
                            std::to_string(n) + " rows, expected " +
                            std::to_string(row_count_));
    }
  }
}

const NumericColumn& DataTable::numeric(std::size_t i) const {
  const auto* col = std::get_if<NumericColumn>(&columns_.at(i));
  if (col == nullptr) {
    throw ValidationError("column '" + schema_.column(i).name +
                          "' is not numeric");
  }
  return *col;
}

const CategoricalColumn& DataTable::categorical(std::size_t i) const {
  const auto* col = std::get_if<CategoricalColumn>(&columns_.at(i));
  if (col == nullptr) {
    throw ValidationError("column '" + schema_.column(i).name +
                          "' is not categorical");
  }
  return *col;
}

std::string_view DataTable::category(std::size_t col, std::size_t row) const {
  const auto& c = categorical(col);
  return c.dictionary[c.codes[row]];
}

std::string DataTable::CellText(std::size_t col, std::size_t row) const {
  if (schema_.column(col).kind == ColumnKind::kCategorical) {
    return std::string(category(col, row));
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), numeric(col)[row]);
  return std::string(buf, res.ptr);
}

DataTable DataTable::SelectRows(std::span<const std::size_t> rows) const {
  std::vector<Column> out;
  out.reserve(columns_.size());
  for (const auto& column : columns_) {
    if (const auto* num = std::get_if<NumericColumn>(&column)) {
      NumericColumn col(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) col[i] = num->at(rows[i]);
      out.emplace_back(std::move(col));
    } else {
      const auto& cat = std::get<CategoricalColumn>(column);
      CategoricalColumn col;
      col.dictionary = cat.dictionary;
      col.codes.resize(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        col.codes[i] = cat.codes.at(rows[i]);
      }
      out.emplace_back(std::move(col));
    }
  }
  return DataTable(schema_, std::move(out));
}

// ---------------------------------------------------------------------------
// Cell parsing

bool IsMissingCell(std::string_view cell) {
  cell = Trim(cell);
  return cell.empty() || cell == "NA" || cell == "N/A" || cell == "NaN" ||
         cell == "nan" || cell == "null" || cell == "NULL";
}

std::optional<double> ParseReal(std::string_view cell) {
  cell = Trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  // from_chars also accepts "inf"/"nan"; require a digit or '.' up front.
  const char lead = cell.front() == '-' && cell.size() > 1 ? cell[1] : cell[0];
  if (!((lead >= '0' && lead <= '9') || lead == '.')) return std::nullopt;
  double value = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(),
                                   value, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

// ---------------------------------------------------------------------------
// TableBuilder

TableBuilder::TableBuilder(TableSchema schema)
    : schema_(std::move(schema)), lookup_(schema_.size()),
      scratch_(schema_.size()) {
  for (const auto& spec : schema_.columns()) {
    if (spec.kind == ColumnKind::kNumeric) {
      columns_.emplace_back(NumericColumn{});
    } else {
      columns_.emplace_back(CategoricalColumn{});
    }
  }
}

bool TableBuilder::AddRow(std::span<const std::string_view> cells) {
  if (cells.size() != schema_.size()) return false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (IsMissingCell(cells[i])) return false;
    if (schema_.column(i).kind == ColumnKind::kNumeric) {
      auto v = ParseReal(cells[i]);
      if (!v) return false;
      scratch_[i] = *v;
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (auto* num = std::get_if<NumericColumn>(&columns_[i])) {
      num->push_back(scratch_[i]);
    } else {
      auto& cat = std::get<CategoricalColumn>(columns_[i]);
      auto [it, inserted] = lookup_[i].try_emplace(
          std::string(cells[i]), static_cast<std::uint32_t>(cat.dictionary.size()));
      if (inserted) cat.dictionary.push_back(it->first);
      cat.codes.push_back(it->second);
    }
  }
  ++rows_;
  return true;
}

DataTable TableBuilder::Build() && {
  return DataTable(std::move(schema_), std::move(columns_));
}

// ---------------------------------------------------------------------------
// Ingestion

TableSchema InferSchema(const std::filesystem::path& path,
                        std::size_t sample_rows, const CsvOptions& options) {
  if (sample_rows == 0) throw ValidationError("sample_rows must be positive");
  auto in = OpenForRead(path);
  CsvReader reader(in, options.delimiter);
  const auto header = ReadHeader(reader, path);

  std::vector<bool> all_numeric(header.size(), true);
  std::vector<bool> any_present(header.size(), false);
  std::vector<std::string> fields;
  for (std::size_t r = 0; r < sample_rows && reader.Next(fields); ++r) {
    for (std::size_t c = 0; c < header.size() && c < fields.size(); ++c) {
      if (IsMissingCell(fields[c])) continue;
      any_present[c] = true;
      if (all_numeric[c] && !ParseReal(fields[c])) all_numeric[c] = false;
    }
  }

  std::vector<ColumnSpec> specs;
  specs.reserve(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    specs.push_back({header[c], all_numeric[c] && any_present[c]
                                    ? ColumnKind::kNumeric
                                    : ColumnKind::kCategorical});
  }
  return TableSchema(std::move(specs));
}

LoadResult LoadTable(const std::filesystem::path& path,
                     const std::optional<TableSchema>& schema_override,
                     const CsvOptions& options) {
  TableSchema schema = schema_override
                           ? *schema_override
                           : InferSchema(path, kDefaultInferenceRows, options);

  auto in = OpenForRead(path);
  CsvReader reader(in, options.delimiter);
  const auto header = ReadHeader(reader, path);
  bool header_matches = header.size() == schema.size();
  for (std::size_t i = 0; header_matches && i < header.size(); ++i) {
    header_matches = header[i] == schema.column(i).name;
  }
  if (!header_matches) {
    throw ValidationError("header of '" + path.string() +
                          "' does not match the schema");
  }

  TableBuilder builder(schema);
  std::size_t dropped = 0;
  std::vector<std::string> fields;
  std::vector<std::string_view> views;
  while (reader.Next(fields)) {
    views.assign(fields.begin(), fields.end());
    if (!builder.AddRow(views)) ++dropped;
  }
  if (builder.row_count() == 0) {
    throw ValidationError("no rows of '" + path.string() +
                          "' survived missing-value cleaning");
  }
  return {std::move(builder).Build(), dropped};
}

std::map<std::string, ColumnKind> ParseSchemaOverrides(std::string_view text) {
  std::map<std::string, ColumnKind> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.rfind(':');
    if (colon == std::string_view::npos) {
      throw ValidationError("schema file line " + std::to_string(line_no) +
                            ": expected 'name: numeric|categorical'");
    }
    const std::string name(Trim(line.substr(0, colon)));
    const auto kind = ParseColumnKind(line.substr(colon + 1));
    if (name.empty() || !kind) {
      throw ValidationError("schema file line " + std::to_string(line_no) +
                            ": expected 'name: numeric|categorical'");
    }
    if (!out.emplace(name, *kind).second) {
      throw ValidationError("schema file lists '" + name + "' twice");
    }
  }
  return out;
}

std::map<std::string, ColumnKind> ReadSchemaOverrides(
    const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseSchemaOverrides(ss.str());
}

TableSchema ApplyOverrides(const TableSchema& schema,
                           const std::map<std::string, ColumnKind>& overrides) {
  auto columns = schema.columns();
  for (const auto& [name, kind] : overrides) {
    const auto idx = schema.IndexOf(name);
    if (!idx) {
      throw ValidationError("schema file names unknown column '" + name + "'");
    }
    columns[*idx].kind = kind;
  }
  return TableSchema(std::move(columns));
}

std::string ToCsv(const DataTable& table, const CsvOptions& options) {
  std::string out;
  const auto& schema = table.schema();
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (c > 0) out.push_back(options.delimiter);
    AppendCsvField(out, schema.column(c).name, options.delimiter);
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (c > 0) out.push_back(options.delimiter);
      AppendCsvField(out, table.CellText(c, r), options.delimiter);
    }
    out.push_back('\n');
  }
  return out;
}

void WriteTable(const DataTable& table, const std::filesystem::path& path,
                const CsvOptions& options) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const auto text = ToCsv(table, options);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Normalization

NormalizationParams FitNormalization(const DataTable& real) {
  if (real.row_count() == 0) {
    throw ValidationError("cannot fit normalization on an empty table");
  }
  NormalizationParams params;
  params.schema = real.schema();
  for (std::size_t c = 0; c < real.column_count(); ++c) {
    ColumnParams p;
    p.kind = real.schema().column(c).kind;
    if (p.kind == ColumnKind::kNumeric) {
      const auto [lo, hi] = std::minmax_element(real.numeric(c).begin(),
                                                real.numeric(c).end());
      p.min = *lo;
      p.max = *hi;
    } else {
      const auto& cat = real.categorical(c);
      std::vector<bool> used(cat.dictionary.size(), false);
      for (auto code : cat.codes) used[code] = true;
      for (std::size_t k = 0; k < cat.dictionary.size(); ++k) {
        if (used[k]) p.categories.push_back(cat.dictionary[k]);
      }
    }
    params.columns.push_back(std::move(p));
  }
  return params;
}

namespace {

void CheckSchema(const DataTable& table, const NormalizationParams& params) {
  if (!(table.schema() == params.schema)) {
    throw ValidationError(
        "table schema does not match the normalization parameters");
  }
}

double NormalizeValue(double x, const ColumnParams& p) {
  if (!(p.max > p.min)) return 0.0;
  return std::clamp((x - p.min) / (p.max - p.min), 0.0, 1.0);
}

// Maps each dictionary entry of `col` to its index among the real
// categories, or to categories.size() when unseen.
std::vector<std::uint32_t> RemapCodes(const CategoricalColumn& col,
                                      const ColumnParams& p) {
  std::unordered_map<std::string_view, std::uint32_t> index;
  for (std::size_t k = 0; k < p.categories.size(); ++k) {
    index.emplace(p.categories[k], static_cast<std::uint32_t>(k));
  }
  const auto unknown = static_cast<std::uint32_t>(p.categories.size());
  std::vector<std::uint32_t> map(col.dictionary.size(), unknown);
  for (std::size_t k = 0; k < col.dictionary.size(); ++k) {
    if (auto it = index.find(col.dictionary[k]); it != index.end()) {
      map[k] = it->second;
    }
  }
  return map;
}

}  // namespace

DenseMatrix EncodeForDistance(const DataTable& table,
                              const NormalizationParams& params) {
  CheckSchema(table, params);
  DenseMatrix m;
  m.rows = table.row_count();
  std::vector<std::size_t> offsets;
  for (const auto& p : params.columns) {
    offsets.push_back(m.cols);
    m.cols += p.kind == ColumnKind::kNumeric ? 1 : p.categories.size() + 1;
  }
  m.values.assign(m.rows * m.cols, 0.0);
  for (std::size_t c = 0; c < params.columns.size(); ++c) {
    const auto& p = params.columns[c];
    if (p.kind == ColumnKind::kNumeric) {
      const auto& col = table.numeric(c);
      for (std::size_t r = 0; r < m.rows; ++r) {
        m.values[r * m.cols + offsets[c]] = NormalizeValue(col[r], p);
      }
    } else {
      const auto& col = table.categorical(c);
      const auto remap = RemapCodes(col, p);
      for (std::size_t r = 0; r < m.rows; ++r) {
        m.values[r * m.cols + offsets[c] + remap[col.codes[r]]] = kInvSqrt2;
      }
    }
  }
  return m;
}

DistanceEmbedding::DistanceEmbedding(std::size_t rows, std::size_t numeric_dims,
                                     std::size_t categorical_dims,
                                     std::vector<double> numeric,
                                     std::vector<std::uint32_t> codes)
    : rows_(rows), numeric_dims_(numeric_dims),
      categorical_dims_(categorical_dims), numeric_(std::move(numeric)),
      codes_(std::move(codes)) {
  if (numeric_.size() != rows_ * numeric_dims_ ||
      codes_.size() != rows_ * categorical_dims_) {
    throw ValidationError("embedding buffer sizes do not match its shape");
  }
}

DistanceEmbedding DistanceEmbedding::FromNumeric(std::size_t rows,
                                                 std::size_t dims,
                                                 std::vector<double> values) {
  return DistanceEmbedding(rows, dims, 0, std::move(values), {});
}

DistanceEmbedding DistanceEmbedding::Translated(
    std::span<const double> offset) const {
  if (offset.size() != numeric_dims_) {
    throw ValidationError("offset dimension mismatch");
  }
  auto moved = numeric_;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    moved[i] += offset[i % numeric_dims_];
  }
  return DistanceEmbedding(rows_, numeric_dims_, categorical_dims_,
                           std::move(moved), codes_);
}

DistanceEmbedding EmbedForDistance(const DataTable& table,
                                   const NormalizationParams& params) {
  CheckSchema(table, params);
  const auto numeric_cols = table.schema().NumericIndices();
  const auto categorical_cols = table.schema().CategoricalIndices();
  const std::size_t n = table.row_count();
  const std::size_t nd = numeric_cols.size();
  const std::size_t cd = categorical_cols.size();
  std::vector<double> numeric(n * nd);
  std::vector<std::uint32_t> codes(n * cd);
  for (std::size_t j = 0; j < nd; ++j) {
    const auto c = numeric_cols[j];
    const auto& col = table.numeric(c);
    for (std::size_t r = 0; r < n; ++r) {
      numeric[r * nd + j] = NormalizeValue(col[r], params.columns[c]);
    }
  }
  for (std::size_t j = 0; j < cd; ++j) {
    const auto c = categorical_cols[j];
    const auto& col = table.categorical(c);
    const auto remap = RemapCodes(col, params.columns[c]);
    for (std::size_t r = 0; r < n; ++r) {
      codes[r * cd + j] = remap[col.codes[r]];
    }
  }
  return DistanceEmbedding(n, nd, cd, std::move(numeric), std::move(codes));
}

double SquaredDistance(const DistanceEmbedding& x, std::size_t a,
                       const DistanceEmbedding& y, std::size_t b) {
  const auto xa = x.numeric_row(a);
  const auto yb = y.numeric_row(b);
  double acc = 0.0;
  for (std::size_t j = 0; j < xa.size(); ++j) {
    const double d = xa[j] - yb[j];
    acc += d * d;
  }
  const auto ca = x.code_row(a);
  const auto cb = y.code_row(b);
  for (std::size_t j = 0; j < ca.size(); ++j) {
    if (ca[j] != cb[j]) acc += 1.0;
  }
  return acc;
}

}  // namespace synthbench
