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

#ifndef INNOINDEX_INDICATORS_H
#define INNOINDEX_INDICATORS_H

#include "innoindex/error.h"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace innoindex {

/// Maps a non-negative count onto [0, 1].
///
/// Linear: min(x / x_max, 1). Exponential: 1 - exp(-lambda x), configured by
/// the half-saturation point x_half (lambda = ln 2 / x_half). A normalizer
/// built without a parameter is "auto": `resolve` fixes the parameter from a
/// batch of observations (x_max = batch max, x_half = batch mean).
class Normalizer {
 public:
  enum class Kind { kLinear, kExponential };

  static Normalizer linear(double x_max);
  static Normalizer linear_auto();
  static Normalizer exponential(double lambda);
  static Normalizer exponential_half(double x_half);
  static Normalizer exponential_auto();

  Kind kind() const { return kind_; }
  bool resolved() const { return param_.has_value(); }
  /// x_max for linear, lambda for exponential. Requires resolved().
  double parameter() const;

  Normalizer resolve(std::span<double const> batch) const;

  /// Throws Error(kDomainError) for x < 0 or NaN, kPrecondition if unresolved.
  double operator()(double x) const;

  std::string describe() const;

  friend bool operator==(Normalizer const&, Normalizer const&) = default;

 private:
  Normalizer(Kind kind, std::optional<double> param) : kind_(kind), param_(param) {}

  Kind kind_;
  std::optional<double> param_;
};

double normalize(double x, Normalizer const& norm);

enum class Aggregator { kMean, kMedian };

std::string_view to_string(Aggregator agg);

/// Mean, or median with even lengths averaging the two central values.
/// Throws Error(kEmptyMeasurement) for an empty list.
double aggregate(std::span<double const> values, Aggregator agg);

/// Indicator weights; the three must sum to 1 within 1e-12.
class WeightVector {
 public:
  WeightVector() = default;  // (1/3, 1/3, 1/3)
  WeightVector(double w_nov, double w_dem, double w_imp);

  double nov() const { return nov_; }
  double dem() const { return dem_; }
  double imp() const { return imp_; }

  friend bool operator==(WeightVector const&, WeightVector const&) = default;

 private:
  double nov_ = 1.0 / 3.0;
  double dem_ = 1.0 / 3.0;
  double imp_ = 1.0 / 3.0;
};

struct IndicatorValue {
  double value = 0.0;
  std::size_t n_samples = 0;
  std::optional<Normalizer> normalizer;
  std::optional<Aggregator> aggregator;
};

/// Nov = 1 - agg(f(R_k)). An auto normalizer is resolved on `hits`.
IndicatorValue compute_nov(std::span<std::uint64_t const> hits, Normalizer const& norm,
                           Aggregator agg);
IndicatorValue compute_nov(std::span<double const> hits, Normalizer const& norm,
                           Aggregator agg);

/// Dem = agg(f(F_k)). An auto normalizer is resolved on `freqs`.
IndicatorValue compute_dem(std::span<double const> freqs, Normalizer const& norm,
                           Aggregator agg);

/// w_nov·nov + w_dem·dem + w_imp·imp, written once for any field type so the
/// same expression can be evaluated in exact arithmetic.
template <typename T>
T additive_index(T const& nov, T const& dem, T const& imp, T const& w_nov, T const& w_dem,
                 T const& w_imp) {
  return w_nov * nov + w_dem * dem + w_imp * imp;
}

/// Ix of the additive criterion. Throws Error(kDomainError) for a component
/// outside [0, 1].
double compute_ix(IndicatorValue const& nov, IndicatorValue const& dem,
                  IndicatorValue const& imp, WeightVector const& w);
double compute_ix(double nov, double dem, double imp, WeightVector const& w);

}  // namespace innoindex

#endif  // INNOINDEX_INDICATORS_H
