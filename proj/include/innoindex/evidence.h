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

#ifndef INNOINDEX_EVIDENCE_H
#define INNOINDEX_EVIDENCE_H

#include "innoindex/error.h"
#include "innoindex/indicators.h"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace innoindex {

/// Partition of [0, 1] into K >= 2 bins A_k = [b_{k-1}, b_k), the last bin
/// closed. At most 64 bins.
class FramePartition {
 public:
  static constexpr std::size_t kMaxBins = 64;

  explicit FramePartition(std::vector<double> boundaries);
  static FramePartition equal_bins(std::size_t k);

  std::vector<double> const& boundaries() const { return boundaries_; }
  std::size_t size() const { return boundaries_.size() - 1; }

  /// 0-based bin holding x. Throws Error(kDomainError) outside [0, 1].
  std::size_t bin_of(double x) const;

  friend bool operator==(FramePartition const&, FramePartition const&) = default;

 private:
  std::vector<double> boundaries_;
};

/// A non-empty set of bins of a frame with `frame_size` bins, as a bitmask
/// (bit k is bin k+1 in the 1-based text form).
class FocalSet {
 public:
  FocalSet(std::size_t frame_size, std::uint64_t mask);
  static FocalSet singleton(std::size_t frame_size, std::size_t bin);
  static FocalSet whole(std::size_t frame_size);
  /// Parses "1|3|4" (1-based). Throws Error(kSchemaError) on bad input.
  static FocalSet parse(std::string_view text, std::size_t frame_size);

  std::size_t frame_size() const { return frame_size_; }
  std::uint64_t mask() const { return mask_; }
  std::vector<std::size_t> members() const;  // 0-based, ascending
  bool is_subset_of(FocalSet const& other) const { return (mask_ & ~other.mask_) == 0; }
  bool intersects(FocalSet const& other) const { return (mask_ & other.mask_) != 0; }
  std::string to_string() const;  // "1|2"

  friend bool operator==(FocalSet const&, FocalSet const&) = default;
  friend auto operator<=>(FocalSet const& a, FocalSet const& b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::size_t frame_size_;
  std::uint64_t mask_;
};

/// Mass function over focal sets of one frame. Masses are positive and sum
/// to 1 within 1e-12; the empty set never carries mass.
class Bpa {
 public:
  using MassMap = std::map<FocalSet, double>;

  /// Validates the invariants; entries with zero mass are dropped. Throws
  /// Error(kDomainError) for a negative mass, a bad sum, or a focal set of a
  /// different frame size.
  Bpa(FramePartition frame, MassMap masses);
  static Bpa vacuous(FramePartition frame);

  FramePartition const& frame() const { return frame_; }
  MassMap const& masses() const { return masses_; }
  double mass(FocalSet const& set) const;
  bool is_vacuous() const;

 private:
  FramePartition frame_;
  MassMap masses_;
};

/// Histogram BPA: m({A_k}) = share of samples in bin k. When
/// `expected_samples` exceeds the number of samples, the unobserved share
/// goes to the whole frame. No samples at all gives the vacuous BPA.
Bpa mass_from_samples(std::span<double const> samples, FramePartition const& frame);
Bpa mass_from_samples(std::span<double const> samples, FramePartition const& frame,
                      std::size_t expected_samples);

struct Combination {
  Bpa bpa;
  double conflict;  // K, the mass sent to the empty set before renormalizing
};

/// Thrown when the combined sources leave no mass outside the empty set.
class TotalConflict : public Error {
 public:
  TotalConflict(std::string const& message, std::size_t left, std::size_t right)
      : Error(ErrorCode::kTotalConflict, message), left_(left), right_(right) {}

  /// In combine_all: the fold covers sources [0, left] and the offending
  /// source is `right` (= left + 1). In combine_pair both are 0 and 1.
  std::size_t left() const { return left_; }
  std::size_t right() const { return right_; }

 private:
  std::size_t left_;
  std::size_t right_;
};

/// Mass assigned to the empty set when combining m1 with m2.
double conflict_mass(Bpa const& m1, Bpa const& m2);

/// Dempster's rule with 1/(1-K) renormalization. Throws Error(kFrameMismatch)
/// for different frames and TotalConflict when 1 - K <= 1e-12.
Bpa combine_pair(Bpa const& m1, Bpa const& m2);
Combination combine_pair_detailed(Bpa const& m1, Bpa const& m2);

/// Left fold of combine_pair. `conflict` is the total conflict of the whole
/// combination, 1 - prod(1 - K_i), which does not depend on fold order.
Combination combine_all_detailed(std::span<Bpa const> sources);
Bpa combine_all(std::span<Bpa const> sources);

/// Pairwise reduction tree over OpenMP tasks. Agrees with combine_all up to
/// rounding; when any tree node hits total conflict it reruns the sequential
/// fold so the error names the same pair combine_all would.
Combination combine_tree(std::span<Bpa const> sources);

struct BeliefInterval {
  double bel = 0.0;
  double pl = 0.0;

  friend bool operator==(BeliefInterval const&, BeliefInterval const&) = default;
};

/// Bel = mass of focal sets inside `query`, Pl = mass of focal sets meeting it.
BeliefInterval bel_pl(Bpa const& bpa, FocalSet const& query);

struct IntervalIndex {
  BeliefInterval ix;       // [lo, hi]
  BeliefInterval ln_ix;    // [ln lo, ln hi]
  BeliefInterval nov, dem, imp;
  WeightVector weights;
  bool floored = false;    // a zero bound with positive weight was raised to kFloor

  static constexpr double kFloor = 1e-9;
};

/// Multiplicative interval index: bound-wise products of powers; `ln_ix` is
/// evaluated separately as the weighted sum of logarithms. Throws
/// Error(kDomainError) for bounds outside [0, 1] or bel > pl.
IntervalIndex interval_ix(BeliefInterval const& nov, BeliefInterval const& dem,
                          BeliefInterval const& imp, WeightVector const& w);

/// `focal_set,mass` CSV with a header row.
std::string write_bpa_csv(Bpa const& bpa);
/// Accepts the header optionally. Throws Error(kSchemaError).
Bpa read_bpa_csv(std::string_view text, FramePartition const& frame);

}  // namespace innoindex

#endif  // INNOINDEX_EVIDENCE_H
