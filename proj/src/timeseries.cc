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

#include "innoindex/timeseries.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace innoindex {

IndicatorSeries::IndicatorSeries(std::vector<SeriesPoint> points, SeriesLabel label)
    : points_(std::move(points)), label_(label) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    auto const& p = points_[i];
    if (!(p.v >= 0.0 && p.v <= 1.0)) {
      throw Error(ErrorCode::kDomainError, "series value outside [0, 1]");
    }
    if (!std::isfinite(p.t) || (i > 0 && !(points_[i - 1].t < p.t))) {
      throw Error(ErrorCode::kDomainError, "series timestamps must strictly increase");
    }
  }
}

IndicatorSeries IndicatorSeries::from_values(std::span<double const> values,
                                             SeriesLabel label) {
  std::vector<SeriesPoint> points;
  points.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    points.push_back({static_cast<double>(i), values[i]});
  }
  return IndicatorSeries(std::move(points), label);
}

std::optional<double> PeakSet::raw_mean_gap() const {
  if (peak_times.size() < 2) return std::nullopt;
  return (peak_times.back() - peak_times.front()) /
         static_cast<double>(peak_times.size() - 1);
}

PeakSet find_local_maxima(IndicatorSeries const& series) {
  auto const& pts = series.points();
  if (pts.size() < 3) {
    throw Error(ErrorCode::kInsufficientData, "peak detection needs at least 3 points");
  }
  PeakSet peaks;
  peaks.t0 = series.t0();
  peaks.tm = series.tm();
  std::size_t i = 1;
  while (i + 1 < pts.size()) {
    if (!(pts[i].v > pts[i - 1].v)) {
      ++i;
      continue;
    }
    // Rising edge into i; walk the plateau of equal values.
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].v == pts[i].v) ++j;
    if (j + 1 < pts.size() && pts[j + 1].v < pts[i].v) peaks.peak_times.push_back(pts[i].t);
    i = j + 1;
  }
  return peaks;
}

double mean_peak_gap(PeakSet const& peaks) {
  double const span = peaks.tm - peaks.t0;
  if (!(span > 0.0)) throw Error(ErrorCode::kDegenerateSpan, "series span has zero length");
  auto gap = peaks.raw_mean_gap();
  if (!gap) return 1.0;
  return std::clamp(*gap / span, 0.0, 1.0);
}

IndicatorSeries moving_average(IndicatorSeries const& series, std::size_t window) {
  auto const& pts = series.points();
  std::size_t const half = window / 2;
  std::vector<SeriesPoint> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::size_t lo = i >= half ? i - half : 0;
    std::size_t hi = std::min(pts.size() - 1, i + half);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += pts[k].v;
    out[i] = {pts[i].t, std::clamp(sum / static_cast<double>(hi - lo + 1), 0.0, 1.0)};
  }
  return IndicatorSeries(std::move(out), series.label());
}

IndicatorValue compute_imp(IndicatorSeries const& nov_series,
                           IndicatorSeries const& dem_series, ImpOptions const& options) {
  if (nov_series.size() < 3 || dem_series.size() < 3) {
    throw Error(ErrorCode::kInsufficientData, "implementability needs at least 3 points per series");
  }
  if (nov_series.t0() != dem_series.t0() || nov_series.tm() != dem_series.tm()) {
    throw Error(ErrorCode::kSpanMismatch, "novelty and demand series cover different spans");
  }
  auto gap = [&](IndicatorSeries const& s) {
    return mean_peak_gap(find_local_maxima(
        options.smooth ? moving_average(s, options.smoothing_window) : s));
  };
  double const value = 1.0 - 0.5 * (gap(nov_series) + gap(dem_series));
  return IndicatorValue{std::clamp(value, 0.0, 1.0), nov_series.size(), std::nullopt,
                        std::nullopt};
}

double TrendFit::operator()(double x) const {
  double y = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * x + *it;
  return y;
}

TrendFit fit_trend(IndicatorSeries const& series, int degree) {
  if (degree < 1) throw Error(ErrorCode::kDomainError, "trend degree must be at least 1");
  auto const n = static_cast<Eigen::Index>(series.size());
  if (n <= degree) {
    throw Error(ErrorCode::kInsufficientData,
                "a degree-" + std::to_string(degree) + " fit needs more than " +
                    std::to_string(degree) + " points");
  }
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double power = 1.0;
    for (int c = 0; c <= degree; ++c) {
      design(i, c) = power;
      power *= static_cast<double>(i);
    }
    values(i) = series.points()[static_cast<std::size_t>(i)].v;
  }
  Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(values);
  Eigen::VectorXd residual = design * coeffs - values;

  TrendFit fit;
  fit.degree = degree;
  fit.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
  fit.residual_rms = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
  return fit;
}

}  // namespace innoindex
