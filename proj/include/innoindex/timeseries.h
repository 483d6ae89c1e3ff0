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

#ifndef INNOINDEX_TIMESERIES_H
#define INNOINDEX_TIMESERIES_H

#include "innoindex/indicators.h"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace innoindex {

struct SeriesPoint {
  double t = 0.0;  // period ordinal or any strictly increasing time axis
  double v = 0.0;  // in [0, 1]
};

enum class SeriesLabel { kNov, kDem };

/// Time series of one indicator; timestamps strictly increase and values lie
/// in [0, 1]. The constructor throws Error(kDomainError) otherwise.
class IndicatorSeries {
 public:
  IndicatorSeries(std::vector<SeriesPoint> points, SeriesLabel label);
  /// Points at t = 0, 1, 2, ...
  static IndicatorSeries from_values(std::span<double const> values, SeriesLabel label);

  std::vector<SeriesPoint> const& points() const { return points_; }
  SeriesLabel label() const { return label_; }
  std::size_t size() const { return points_.size(); }
  double t0() const { return points_.front().t; }
  double tm() const { return points_.back().t; }

 private:
  std::vector<SeriesPoint> points_;
  SeriesLabel label_;
};

struct PeakSet {
  std::vector<double> peak_times;
  double t0 = 0.0;
  double tm = 0.0;

  /// Mean distance between consecutive peaks in time units; empty with
  /// fewer than two peaks.
  std::optional<double> raw_mean_gap() const;
};

/// Interior strict local maxima; a plateau whose neighbours on both sides are
/// strictly lower counts once, at its first point. Endpoints never count.
/// Throws Error(kInsufficientData) for fewer than 3 points.
PeakSet find_local_maxima(IndicatorSeries const& series);

/// Mean inter-peak gap divided by the span length, or 1 with fewer than two
/// peaks. Throws Error(kDegenerateSpan) if tm <= t0.
double mean_peak_gap(PeakSet const& peaks);

/// Centred moving average; the window shrinks at the ends.
IndicatorSeries moving_average(IndicatorSeries const& series, std::size_t window = 3);

struct ImpOptions {
  bool smooth = false;
  std::size_t smoothing_window = 3;
};

/// Imp = 1 - (gap_nov + gap_dem) / 2 with both gaps from mean_peak_gap.
/// Throws Error(kSpanMismatch) unless both series cover the same [t0, tm].
IndicatorValue compute_imp(IndicatorSeries const& nov_series,
                           IndicatorSeries const& dem_series,
                           ImpOptions const& options = {});

struct TrendFit {
  int degree = 1;
  std::vector<double> coefficients;  // constant term first
  double residual_rms = 0.0;

  double operator()(double x) const;
};

/// Least-squares polynomial over (point index, v). Throws
/// Error(kInsufficientData) when the series has no more points than `degree`
/// and Error(kDomainError) for degree < 1.
TrendFit fit_trend(IndicatorSeries const& series, int degree);

}  // namespace innoindex

#endif  // INNOINDEX_TIMESERIES_H
