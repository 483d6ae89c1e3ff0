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

#ifndef INNOINDEX_DATE_H
#define INNOINDEX_DATE_H

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace innoindex {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date `YYYY-MM-DD`.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

/// Half-open calendar interval [start, end).
struct DateWindow {
  Date start;
  Date end;

  bool empty() const { return end <= start; }
  bool contains(Date d) const { return start <= d && d < end; }
  DateWindow intersect(DateWindow const& other) const;

  friend bool operator==(DateWindow const&, DateWindow const&) = default;
};

/// Calendar step between grid boundaries: `<n>y`, `<n>m` or `<n>d`.
struct PeriodLength {
  enum class Unit { kYears, kMonths, kDays };
  int count = 1;
  Unit unit = Unit::kYears;

  static std::optional<PeriodLength> parse(std::string_view text);
  Date advance(Date from) const;
};

/// Boundaries start, start+p, start+2p, ... up to `end`. A trailing partial
/// period is closed at `end`. Throws Error(kPrecondition) unless start < end.
std::vector<Date> make_grid(Date start, Date end, PeriodLength period);

}  // namespace innoindex

#endif  // INNOINDEX_DATE_H
