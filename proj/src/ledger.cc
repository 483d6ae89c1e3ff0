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

#include "innoindex/ledger.h"

#include "innoindex/csv.h"
#include "innoindex/error.h"
#include "innoindex/text.h"

#include <charconv>
#include <fstream>
#include <set>

namespace innoindex {

Ledger Ledger::parse(std::string_view csv_text) {
  auto table = csv::read_table(csv_text,
                               {"object", "source", "query", "period_start", "period_end",
                                "hits", "freq"},
                               "ledger");
  auto const c_object = table.column("object"), c_source = table.column("source"),
             c_query = table.column("query"), c_start = table.column("period_start"),
             c_end = table.column("period_end"), c_hits = table.column("hits"),
             c_freq = table.column("freq");
  Ledger ledger;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto const& row = table.rows[i];
    auto fail = [&](std::string const& why) {
      return Error(ErrorCode::kSchemaError,
                   "ledger row " + std::to_string(i + 2) + ": " + why);
    };
    LedgerRecord r;
    r.object_id = row[c_object];
    r.source_id = row[c_source];
    r.query = row[c_query];
    auto start = parse_date(row[c_start]);
    auto end = parse_date(row[c_end]);
    if (!start || !end || !(*start < *end)) throw fail("bad period");
    r.period_start = *start;
    r.period_end = *end;
    auto const& h = row[c_hits];
    auto [ptr, ec] = std::from_chars(h.data(), h.data() + h.size(), r.hits);
    if (h.empty() || ec != std::errc() || ptr != h.data() + h.size()) throw fail("bad hits");
    auto freq = csv::parse_number(row[c_freq]);
    if (!freq || *freq < 0.0) throw fail("bad freq");
    r.freq = *freq;
    if (r.object_id.empty() || r.source_id.empty() || r.query.empty()) {
      throw fail("empty object, source or query");
    }
    try {
      ledger.append(std::move(r));
    } catch (Error const&) {
      throw fail("repeated key");
    }
  }
  return ledger;
}

Ledger Ledger::read(std::filesystem::path const& path) {
  if (!std::filesystem::exists(path)) return Ledger();
  return parse(text::read_file(path));
}

void Ledger::append(LedgerRecord record) {
  auto key = record.key();
  if (!records_.emplace(std::move(key), std::move(record)).second) {
    throw Error(ErrorCode::kSchemaError, "ledger already holds this key");
  }
}

void Ledger::upsert(LedgerRecord record) {
  auto key = record.key();
  records_.insert_or_assign(std::move(key), std::move(record));
}

std::vector<LedgerRecord> Ledger::records() const {
  std::vector<LedgerRecord> out;
  out.reserve(records_.size());
  for (auto const& [key, r] : records_) out.push_back(r);
  return out;
}

std::vector<LedgerRecord> Ledger::records_for(std::string_view object_id) const {
  std::vector<LedgerRecord> out;
  for (auto const& [key, r] : records_) {
    if (r.object_id == object_id) out.push_back(r);
  }
  return out;
}

std::vector<std::string> Ledger::object_ids() const {
  std::set<std::string> ids;
  for (auto const& [key, r] : records_) ids.insert(r.object_id);
  return {ids.begin(), ids.end()};
}

std::string Ledger::to_csv() const {
  std::string out(kLedgerHeader);
  out += '\n';
  for (auto const& [key, r] : records_) {
    out += csv::format_row({r.object_id, r.source_id, r.query, format_date(r.period_start),
                            format_date(r.period_end), std::to_string(r.hits),
                            csv::format_number(r.freq)});
  }
  return out;
}

void Ledger::write(std::filesystem::path const& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + tmp.string() + "'");
    out << to_csv();
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::vector<LedgerRecord> to_records(MeasurementSeries const& series) {
  std::vector<LedgerRecord> out;
  for (std::size_t p = 0; p < series.cells.size(); ++p) {
    for (std::size_t q = 0; q < series.cells[p].size(); ++q) {
      auto const& cell = series.cells[p][q];
      if (!cell) continue;
      out.push_back(LedgerRecord{series.object_id, series.source_id,
                                 series.queries[q].canonical_text(), series.grid[p],
                                 series.grid[p + 1], cell->hit_count, cell->frequency});
    }
  }
  return out;
}

}  // namespace innoindex
