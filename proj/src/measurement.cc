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

#include "innoindex/measurement.h"

#include <omp.h>

namespace innoindex {
namespace {

MeasurementSeries empty_series(EvidenceSource const& source, std::string object_id,
                               std::vector<Query> const& queries,
                               std::vector<Date> const& grid) {
  if (grid.size() < 2) {
    throw Error(ErrorCode::kPrecondition, "a measurement grid needs at least two boundaries");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) {
      throw Error(ErrorCode::kPrecondition, "grid boundaries must be strictly increasing");
    }
  }
  if (queries.empty()) throw Error(ErrorCode::kPrecondition, "no queries to measure");
  MeasurementSeries series;
  series.object_id = std::move(object_id);
  series.source_id = source.id();
  series.grid = grid;
  series.queries = queries;
  series.cells.assign(grid.size() - 1,
                      std::vector<std::optional<HitResult>>(queries.size()));
  return series;
}

// One request with rate limiting and retries; empty on permanent failure.
std::optional<HitResult> run_cell(EvidenceSource& source, RateLimiter& limiter,
                                  Query const& query, DateWindow const& window,
                                  MeasureOptions const& options) {
  for (int attempt = 0;; ++attempt) {
    limiter.acquire();
    try {
      auto result = source.execute_query(query, window);
      result.window = window;
      return result;
    } catch (TransientSourceError const&) {
      if (attempt >= options.retry.max_retries) return std::nullopt;
      options.sleeper(options.retry.delay_before(attempt));
    } catch (...) {
      return std::nullopt;
    }
  }
}

MeasurementSeries finish(MeasurementSeries series) {
  if (series.complete()) return series;
  auto missing = series.missing();
  std::string message = "source '" + series.source_id + "' failed for " +
                        std::to_string(missing.size()) + " request(s), first: '" +
                        series.queries[missing.front().second].canonical_text() +
                        "' in period starting " +
                        format_date(series.grid[missing.front().first]);
  throw SourceUnavailable(message, std::move(series));
}

}  // namespace

bool MeasurementSeries::complete() const {
  for (auto const& row : cells) {
    for (auto const& cell : row) {
      if (!cell) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> MeasurementSeries::missing() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < cells.size(); ++p) {
    for (std::size_t q = 0; q < cells[p].size(); ++q) {
      if (!cells[p][q]) out.emplace_back(p, q);
    }
  }
  return out;
}

MeasurementSeries measure_series(EvidenceSource& source, std::string object_id,
                                 std::vector<Query> const& queries,
                                 std::vector<Date> const& grid,
                                 MeasureOptions const& options) {
  auto series = empty_series(source, std::move(object_id), queries, grid);
  auto const caps = source.capabilities();
  RateLimiter limiter(caps.max_requests_per_minute, options.clock, options.sleeper);

  long const periods = static_cast<long>(series.period_count());
  long const nq = static_cast<long>(queries.size());
  long const total = periods * nq;
  int threads = caps.thread_safe ? (options.max_threads > 0 ? options.max_threads
                                                            : omp_get_max_threads())
                                 : 1;

#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long cell = 0; cell < total; ++cell) {
    auto const p = static_cast<std::size_t>(cell / nq);
    auto const q = static_cast<std::size_t>(cell % nq);
    series.cells[p][q] = run_cell(source, limiter, queries[q], series.period(p), options);
  }
  return finish(std::move(series));
}

MeasurementSeries measure_series_serial(EvidenceSource& source, std::string object_id,
                                        std::vector<Query> const& queries,
                                        std::vector<Date> const& grid,
                                        MeasureOptions const& options) {
  auto series = empty_series(source, std::move(object_id), queries, grid);
  RateLimiter limiter(source.capabilities().max_requests_per_minute, options.clock,
                      options.sleeper);
  for (std::size_t p = 0; p < series.period_count(); ++p) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      series.cells[p][q] = run_cell(source, limiter, queries[q], series.period(p), options);
    }
  }
  return finish(std::move(series));
}

}  // namespace innoindex
