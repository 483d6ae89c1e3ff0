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

#ifndef INNOINDEX_MEASUREMENT_H
#define INNOINDEX_MEASUREMENT_H

#include "innoindex/source.h"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace innoindex {

/// Hit counts of one query set on one source over a period grid.
///
/// `cells[p][q]` holds the result of query `q` over [grid[p], grid[p+1]).
/// A cell is empty only in the partial series carried by SourceUnavailable.
struct MeasurementSeries {
  std::string object_id;
  std::string source_id;
  std::vector<Date> grid;
  std::vector<Query> queries;
  std::vector<std::vector<std::optional<HitResult>>> cells;

  std::size_t period_count() const { return grid.empty() ? 0 : grid.size() - 1; }
  DateWindow period(std::size_t p) const { return {grid[p], grid[p + 1]}; }
  bool complete() const;
  /// (period, query) indices of empty cells, in grid/query order.
  std::vector<std::pair<std::size_t, std::size_t>> missing() const;
};

/// Thrown when some (query, period) requests failed for good.
class SourceUnavailable : public Error {
 public:
  SourceUnavailable(std::string const& message, MeasurementSeries partial)
      : Error(ErrorCode::kSourceUnavailable, message), partial_(std::move(partial)) {}

  MeasurementSeries const& partial() const { return partial_; }

 private:
  MeasurementSeries partial_;
};

struct MeasureOptions {
  RetryPolicy retry;
  SteadyClock clock = system_clock();
  Sleeper sleeper = system_sleeper();
  /// Upper bound on worker threads; 0 lets OpenMP decide. Sources that are
  /// not thread-safe always run on one thread.
  int max_threads = 0;
};

/// Runs every (query, period) request against `source`, respecting its rate
/// limit and retrying transient failures with exponential backoff. Requests
/// fan out over OpenMP threads for thread-safe sources; cells are written in
/// place, so the result order never depends on completion order.
///
/// Throws Error(kPrecondition) for a grid with fewer than two boundaries or
/// an empty query list, and SourceUnavailable when any cell stays empty.
MeasurementSeries measure_series(EvidenceSource& source, std::string object_id,
                                 std::vector<Query> const& queries,
                                 std::vector<Date> const& grid,
                                 MeasureOptions const& options = {});

/// Single-threaded reference of measure_series with identical semantics.
MeasurementSeries measure_series_serial(EvidenceSource& source, std::string object_id,
                                        std::vector<Query> const& queries,
                                        std::vector<Date> const& grid,
                                        MeasureOptions const& options = {});

}  // namespace innoindex

#endif  // INNOINDEX_MEASUREMENT_H
