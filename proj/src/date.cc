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

#include "innoindex/date.h"

#include "innoindex/error.h"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace innoindex {
namespace {

std::optional<int> digits(std::string_view s) {
  int value = 0;
  if (s.empty()) return std::nullopt;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = digits(text.substr(0, 4));
  auto m = digits(text.substr(5, 2));
  auto d = digits(text.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year(*y),
                                  std::chrono::month(static_cast<unsigned>(*m)),
                                  std::chrono::day(static_cast<unsigned>(*d))};
  if (!ymd.ok()) return std::nullopt;
  return Date(ymd);
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd(d);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

DateWindow DateWindow::intersect(DateWindow const& other) const {
  DateWindow w{std::max(start, other.start), std::min(end, other.end)};
  if (w.end < w.start) w.end = w.start;
  return w;
}

std::optional<PeriodLength> PeriodLength::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  auto n = digits(text.substr(0, text.size() - 1));
  if (!n || *n <= 0) return std::nullopt;
  PeriodLength p;
  p.count = *n;
  switch (text.back()) {
    case 'y': p.unit = Unit::kYears; break;
    case 'm': p.unit = Unit::kMonths; break;
    case 'd': p.unit = Unit::kDays; break;
    default: return std::nullopt;
  }
  return p;
}

Date PeriodLength::advance(Date from) const {
  using namespace std::chrono;
  if (unit == Unit::kDays) return from + days(count);
  year_month_day ymd(from);
  year_month_day next = unit == Unit::kYears ? ymd + years(count) : ymd + months(count);
  if (!next.ok()) next = next.year() / next.month() / last;
  return Date(next);
}

std::vector<Date> make_grid(Date start, Date end, PeriodLength period) {
  if (!(start < end)) {
    throw Error(ErrorCode::kPrecondition,
                "grid start " + format_date(start) + " is not before end " +
                    format_date(end));
  }
  std::vector<Date> grid{start};
  while (grid.back() < end) grid.push_back(std::min(period.advance(grid.back()), end));
  return grid;
}

}  // namespace innoindex
