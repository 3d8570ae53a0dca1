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

#ifndef SYNTHBENCH_CSV_H_
#define SYNTHBENCH_CSV_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace synthbench {

// RFC 4180 record reader: quoted fields may contain the delimiter, doubled
// quotes and line breaks; CRLF and LF endings are both accepted. A leading
// UTF-8 byte-order mark is skipped. Empty lines are skipped.
class CsvReader {
 public:
  CsvReader(std::istream& in, char delimiter);

  // Reads the next record into `fields`; false at end of input.
  bool Next(std::vector<std::string>& fields);

  // Physical line number where the last record returned started (1-based).
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

// Appends `field` to `out`, quoting it when it contains the delimiter, a
// quote, or a line break.
void AppendCsvField(std::string& out, std::string_view field, char delimiter);

}  // namespace synthbench

#endif  // SYNTHBENCH_CSV_H_
