// Copyright 2026 The innoindex Authors
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

#ifndef INNOINDEX_CSV_H
#define INNOINDEX_CSV_H

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace innoindex::csv {

using Row = std::vector<std::string>;

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);
/// Joins escaped fields with commas and appends '\n'.
std::string format_row(Row const& fields);

/// Parses RFC 4180 style CSV. Empty lines are skipped. Throws
/// Error(kSchemaError) on an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

/// Numbers are printed with 9 significant digits.
std::string format_number(double v);
/// Strict parse of a whole field as a finite double.
std::optional<double> parse_number(std::string_view field);

/// CSV with a header row, addressed by column name.
struct Table {
  Row header;
  std::vector<Row> rows;

  /// Index of `name`; throws Error(kSchemaError) when the column is absent.
  std::size_t column(std::string_view name) const;
};

/// Parses `text` and checks that the header contains every `required`
/// column and that each row has the header's width. Throws
/// Error(kSchemaError) naming `what` otherwise.
Table read_table(std::string_view text, std::initializer_list<std::string_view> required,
                 std::string_view what);

}  // namespace innoindex::csv

#endif  // INNOINDEX_CSV_H
