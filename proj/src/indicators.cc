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

#include "innoindex/indicators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace innoindex {
namespace {

double require_positive(double v, char const* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kDomainError, std::string(what) + " must be positive and finite");
  }
  return v;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

IndicatorValue normalized_aggregate(std::span<double const> xs, Normalizer const& norm,
                                    Aggregator agg, char const* name) {
  if (xs.empty()) {
    throw Error(ErrorCode::kEmptyMeasurement, std::string(name) + " has no samples");
  }
  Normalizer resolved = norm.resolved() ? norm : norm.resolve(xs);
  std::vector<double> normalized(xs.size());
  std::transform(xs.begin(), xs.end(), normalized.begin(),
                 [&](double x) { return resolved(x); });
  return IndicatorValue{clamp01(aggregate(normalized, agg)), xs.size(), resolved, agg};
}

}  // namespace

Normalizer Normalizer::linear(double x_max) {
  return Normalizer(Kind::kLinear, require_positive(x_max, "x_max"));
}

Normalizer Normalizer::linear_auto() { return Normalizer(Kind::kLinear, std::nullopt); }

Normalizer Normalizer::exponential(double lambda) {
  return Normalizer(Kind::kExponential, require_positive(lambda, "lambda"));
}

Normalizer Normalizer::exponential_half(double x_half) {
  return exponential(std::numbers::ln2 / require_positive(x_half, "x_half"));
}

Normalizer Normalizer::exponential_auto() {
  return Normalizer(Kind::kExponential, std::nullopt);
}

double Normalizer::parameter() const {
  if (!param_) throw Error(ErrorCode::kPrecondition, "normalizer parameter is unresolved");
  return *param_;
}

Normalizer Normalizer::resolve(std::span<double const> batch) const {
  if (param_) return *this;
  for (double x : batch) {
    if (!(x >= 0.0)) throw Error(ErrorCode::kDomainError, "negative value in batch");
  }
  if (kind_ == Kind::kLinear) {
    double m = batch.empty() ? 0.0 : *std::max_element(batch.begin(), batch.end());
    // An all-zero batch normalizes to zero under any positive scale.
    return linear(m > 0.0 ? m : 1.0);
  }
  double mean = batch.empty()
                    ? 0.0
                    : std::accumulate(batch.begin(), batch.end(), 0.0) /
                          static_cast<double>(batch.size());
  return exponential_half(mean > 0.0 ? mean : 1.0);
}

double Normalizer::operator()(double x) const {
  if (!(x >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "cannot normalize a negative or NaN value");
  }
  double p = parameter();
  if (kind_ == Kind::kLinear) return std::min(x / p, 1.0);
  return clamp01(-std::expm1(-p * x));
}

std::string Normalizer::describe() const {
  std::ostringstream out;
  out.precision(9);
  if (kind_ == Kind::kLinear) {
    out << "linear(x_max=";
    if (param_) out << *param_; else out << "auto";
  } else {
    out << "exp(x_half=";
    if (param_) out << std::numbers::ln2 / *param_; else out << "auto";
  }
  out << ')';
  return out.str();
}

double normalize(double x, Normalizer const& norm) { return norm(x); }

std::string_view to_string(Aggregator agg) {
  return agg == Aggregator::kMean ? "mean" : "median";
}

double aggregate(std::span<double const> values, Aggregator agg) {
  if (values.empty()) throw Error(ErrorCode::kEmptyMeasurement, "nothing to aggregate");
  if (agg == Aggregator::kMean) {
    // Running mean: a constant list yields that constant exactly.
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      m += (values[i] - m) / static_cast<double>(i + 1);
    }
    return m;
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t const n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

WeightVector::WeightVector(double w_nov, double w_dem, double w_imp)
    : nov_(w_nov), dem_(w_dem), imp_(w_imp) {
  for (double w : {w_nov, w_dem, w_imp}) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::kInvalidWeights, "each weight must lie in [0, 1]");
    }
  }
  if (std::abs(w_nov + w_dem + w_imp - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidWeights, "weights must sum to 1");
  }
}

IndicatorValue compute_nov(std::span<double const> hits, Normalizer const& norm,
                           Aggregator agg) {
  auto v = normalized_aggregate(hits, norm, agg, "novelty");
  v.value = clamp01(1.0 - v.value);
  return v;
}

IndicatorValue compute_nov(std::span<std::uint64_t const> hits, Normalizer const& norm,
                           Aggregator agg) {
  std::vector<double> xs(hits.begin(), hits.end());
  return compute_nov(std::span<double const>(xs), norm, agg);
}

IndicatorValue compute_dem(std::span<double const> freqs, Normalizer const& norm,
                           Aggregator agg) {
  return normalized_aggregate(freqs, norm, agg, "demand");
}

double compute_ix(double nov, double dem, double imp, WeightVector const& w) {
  for (double v : {nov, dem, imp}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kDomainError, "indicator values must lie in [0, 1]");
    }
  }
  return clamp01(additive_index(nov, dem, imp, w.nov(), w.dem(), w.imp()));
}

double compute_ix(IndicatorValue const& nov, IndicatorValue const& dem,
                  IndicatorValue const& imp, WeightVector const& w) {
  return compute_ix(nov.value, dem.value, imp.value, w);
}

}  // namespace innoindex
