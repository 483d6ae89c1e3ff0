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

#ifndef INNOINDEX_LEDGER_H
#define INNOINDEX_LEDGER_H

#include "innoindex/date.h"
#include "innoindex/measurement.h"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace innoindex {

/// One measured (object, source, query, period) cell.
struct LedgerRecord {
  std::string object_id;
  std::string source_id;
  std::string query;
  Date period_start;
  Date period_end;
  std::uint64_t hits = 0;
  double freq = 0.0;

  using Key = std::tuple<std::string, std::string, Date, std::string>;
  Key key() const { return {object_id, source_id, period_start, query}; }

  friend bool operator==(LedgerRecord const&, LedgerRecord const&) = default;
};

inline constexpr std::string_view kLedgerHeader =
    "object,source,query,period_start,period_end,hits,freq";

/// Measurement ledger keyed by (object, source, period_start, query).
///
/// Rows are always emitted in key order, so the file content depends only on
/// the set of records, never on insertion order.
class Ledger {
 public:
  /// Parses ledger CSV. Throws Error(kSchemaError) on a bad header, a bad
  /// field or a repeated key.
  static Ledger parse(std::string_view csv_text);
  /// A missing file is an empty ledger.
  static Ledger read(std::filesystem::path const& path);

  /// Adds a record whose key is new; throws Error(kSchemaError) otherwise.
  void append(LedgerRecord record);
  /// Adds or replaces the record with the same key.
  void upsert(LedgerRecord record);

  std::size_t size() const { return records_.size(); }
  std::vector<LedgerRecord> records() const;
  std::vector<LedgerRecord> records_for(std::string_view object_id) const;
  std::vector<std::string> object_ids() const;

  std::string to_csv() const;
  /// Writes through a temporary file and renames it into place.
  void write(std::filesystem::path const& path) const;

 private:
  std::map<LedgerRecord::Key, LedgerRecord> records_;
};

/// Flattens the filled cells of a series into ledger records.
std::vector<LedgerRecord> to_records(MeasurementSeries const& series);

}  // namespace innoindex

#endif  // INNOINDEX_LEDGER_H
