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

#include "innoindex/evidence.h"

#include "innoindex/csv.h"
#include "innoindex/text.h"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <optional>

namespace innoindex {
namespace {

constexpr double kMassTolerance = 1e-12;

std::uint64_t full_mask(std::size_t k) {
  return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

void require_same_frame(Bpa const& a, Bpa const& b) {
  if (!(a.frame() == b.frame())) {
    throw Error(ErrorCode::kFrameMismatch, "mass functions are defined on different frames");
  }
}

}  // namespace

FramePartition::FramePartition(std::vector<double> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 3 || boundaries_.size() - 1 > kMaxBins) {
    throw Error(ErrorCode::kDomainError, "a frame needs between 2 and 64 bins");
  }
  if (boundaries_.front() != 0.0 || boundaries_.back() != 1.0) {
    throw Error(ErrorCode::kDomainError, "frame boundaries must run from 0 to 1");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (!(boundaries_[i - 1] < boundaries_[i])) {
      throw Error(ErrorCode::kDomainError, "frame boundaries must strictly increase");
    }
  }
}

FramePartition FramePartition::equal_bins(std::size_t k) {
  if (k < 2 || k > kMaxBins) {
    throw Error(ErrorCode::kDomainError, "a frame needs between 2 and 64 bins");
  }
  std::vector<double> b(k + 1);
  for (std::size_t i = 0; i <= k; ++i) b[i] = static_cast<double>(i) / static_cast<double>(k);
  b.back() = 1.0;
  return FramePartition(std::move(b));
}

std::size_t FramePartition::bin_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "sample outside [0, 1]");
  }
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), x);
  auto bin = static_cast<std::size_t>(it - boundaries_.begin()) - 1;
  return std::min(bin, size() - 1);
}

FocalSet::FocalSet(std::size_t frame_size, std::uint64_t mask)
    : frame_size_(frame_size), mask_(mask) {
  if (frame_size == 0 || frame_size > FramePartition::kMaxBins) {
    throw Error(ErrorCode::kDomainError, "focal set frame size out of range");
  }
  if (mask == 0) throw Error(ErrorCode::kDomainError, "focal sets must be non-empty");
  if ((mask & ~full_mask(frame_size)) != 0) {
    throw Error(ErrorCode::kDomainError, "focal set refers to bins outside the frame");
  }
}

FocalSet FocalSet::singleton(std::size_t frame_size, std::size_t bin) {
  if (bin >= 64) throw Error(ErrorCode::kDomainError, "bin index out of range");
  return FocalSet(frame_size, std::uint64_t{1} << bin);
}

FocalSet FocalSet::whole(std::size_t frame_size) {
  return FocalSet(frame_size, full_mask(frame_size));
}

FocalSet FocalSet::parse(std::string_view text, std::size_t frame_size) {
  std::uint64_t mask = 0;
  for (auto const& piece : text::split(text, '|')) {
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), index);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() ||
        index == 0 || index > frame_size) {
      throw Error(ErrorCode::kSchemaError, "bad focal set '" + std::string(text) +
                                               "' for a frame of " +
                                               std::to_string(frame_size) + " bins");
    }
    mask |= std::uint64_t{1} << (index - 1);
  }
  return FocalSet(frame_size, mask);
}

std::vector<std::size_t> FocalSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < frame_size_; ++k) {
    if (mask_ & (std::uint64_t{1} << k)) out.push_back(k);
  }
  return out;
}

std::string FocalSet::to_string() const {
  std::string out;
  for (auto k : members()) {
    if (!out.empty()) out += '|';
    out += std::to_string(k + 1);
  }
  return out;
}

Bpa::Bpa(FramePartition frame, MassMap masses) : frame_(std::move(frame)) {
  double sum = 0.0;
  for (auto const& [set, m] : masses) {
    if (set.frame_size() != frame_.size()) {
      throw Error(ErrorCode::kDomainError, "focal set does not belong to this frame");
    }
    if (!(m >= 0.0 && m <= 1.0 + kMassTolerance)) {
      throw Error(ErrorCode::kDomainError, "mass outside [0, 1]");
    }
    sum += m;
    if (m > 0.0) masses_.emplace(set, std::min(m, 1.0));
  }
  if (std::abs(sum - 1.0) > kMassTolerance) {
    throw Error(ErrorCode::kDomainError,
                "masses sum to " + csv::format_number(sum) + ", expected 1");
  }
}

Bpa Bpa::vacuous(FramePartition frame) {
  auto k = frame.size();
  return Bpa(std::move(frame), {{FocalSet::whole(k), 1.0}});
}

double Bpa::mass(FocalSet const& set) const {
  auto it = masses_.find(set);
  return it == masses_.end() ? 0.0 : it->second;
}

bool Bpa::is_vacuous() const {
  return masses_.size() == 1 && masses_.begin()->first == FocalSet::whole(frame_.size());
}

Bpa mass_from_samples(std::span<double const> samples, FramePartition const& frame) {
  return mass_from_samples(samples, frame, samples.size());
}

Bpa mass_from_samples(std::span<double const> samples, FramePartition const& frame,
                      std::size_t expected_samples) {
  std::size_t const total = std::max(expected_samples, samples.size());
  if (total == 0) return Bpa::vacuous(frame);
  std::vector<std::size_t> counts(frame.size(), 0);
  for (double x : samples) ++counts[frame.bin_of(x)];
  Bpa::MassMap masses;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0) {
      masses.emplace(FocalSet::singleton(frame.size(), k),
                     static_cast<double>(counts[k]) / static_cast<double>(total));
    }
  }
  if (total > samples.size()) {
    masses[FocalSet::whole(frame.size())] +=
        static_cast<double>(total - samples.size()) / static_cast<double>(total);
  }
  return Bpa(frame, std::move(masses));
}

double conflict_mass(Bpa const& m1, Bpa const& m2) {
  require_same_frame(m1, m2);
  double k = 0.0;
  for (auto const& [b, mb] : m1.masses()) {
    for (auto const& [c, mc] : m2.masses()) {
      if ((b.mask() & c.mask()) == 0) k += mb * mc;
    }
  }
  return k;
}

Combination combine_pair_detailed(Bpa const& m1, Bpa const& m2) {
  require_same_frame(m1, m2);
  std::size_t const k = m1.frame().size();
  std::map<std::uint64_t, double> joint;
  double conflict = 0.0;
  for (auto const& [b, mb] : m1.masses()) {
    for (auto const& [c, mc] : m2.masses()) {
      std::uint64_t both = b.mask() & c.mask();
      if (both == 0) {
        conflict += mb * mc;
      } else {
        joint[both] += mb * mc;
      }
    }
  }
  double retained = 0.0;
  for (auto const& [mask, m] : joint) retained += m;
  if (retained <= kMassTolerance) {
    throw TotalConflict("the two sources are in total conflict (K = 1)", 0, 1);
  }
  Bpa::MassMap masses;
  for (auto const& [mask, m] : joint) masses.emplace(FocalSet(k, mask), m / retained);
  return Combination{Bpa(m1.frame(), std::move(masses)), std::clamp(conflict, 0.0, 1.0)};
}

Bpa combine_pair(Bpa const& m1, Bpa const& m2) { return combine_pair_detailed(m1, m2).bpa; }

Combination combine_all_detailed(std::span<Bpa const> sources) {
  if (sources.empty()) throw Error(ErrorCode::kPrecondition, "no sources to combine");
  Combination acc{sources.front(), 0.0};
  double retained = 1.0;
  for (std::size_t i = 1; i < sources.size(); ++i) {
    try {
      auto step = combine_pair_detailed(acc.bpa, sources[i]);
      retained *= 1.0 - step.conflict;
      acc.bpa = std::move(step.bpa);
    } catch (TotalConflict const&) {
      throw TotalConflict("sources 1.." + std::to_string(i) + " combined are in total conflict with source " +
                              std::to_string(i + 1),
                          i - 1, i);
    }
  }
  acc.conflict = std::clamp(1.0 - retained, 0.0, 1.0);
  return acc;
}

Bpa combine_all(std::span<Bpa const> sources) { return combine_all_detailed(sources).bpa; }

namespace {

struct TreeNode {
  std::optional<Bpa> bpa;
  double retained = 1.0;
};

TreeNode reduce(std::span<Bpa const> sources, std::atomic<bool>& conflict) {
  if (sources.size() == 1) return {sources.front(), 1.0};
  std::size_t const mid = sources.size() / 2;
  TreeNode left, right;
#pragma omp task shared(left, conflict) if (sources.size() > 8)
  left = reduce(sources.subspan(0, mid), conflict);
  right = reduce(sources.subspan(mid), conflict);
#pragma omp taskwait
  if (conflict.load() || !left.bpa || !right.bpa) return {};
  try {
    auto step = combine_pair_detailed(*left.bpa, *right.bpa);
    return {std::move(step.bpa), left.retained * right.retained * (1.0 - step.conflict)};
  } catch (...) {
    // Exceptions must not leave a task; the sequential rerun reports them.
    conflict.store(true);
    return {};
  }
}

}  // namespace

Combination combine_tree(std::span<Bpa const> sources) {
  if (sources.empty()) throw Error(ErrorCode::kPrecondition, "no sources to combine");
  for (auto const& s : sources) require_same_frame(sources.front(), s);
  std::atomic<bool> conflict{false};
  TreeNode root;
#pragma omp parallel
#pragma omp single
  root = reduce(sources, conflict);
  if (conflict.load() || !root.bpa) return combine_all_detailed(sources);
  return Combination{std::move(*root.bpa), std::clamp(1.0 - root.retained, 0.0, 1.0)};
}

BeliefInterval bel_pl(Bpa const& bpa, FocalSet const& query) {
  if (query.frame_size() != bpa.frame().size()) {
    throw Error(ErrorCode::kFrameMismatch, "query set belongs to a different frame");
  }
  double bel = 0.0, pl = 0.0;
  for (auto const& [set, m] : bpa.masses()) {
    if (set.is_subset_of(query)) bel += m;
    if (set.intersects(query)) pl += m;
  }
  pl = std::clamp(pl, 0.0, 1.0);
  bel = std::clamp(bel, 0.0, pl);
  return {bel, pl};
}

IntervalIndex interval_ix(BeliefInterval const& nov, BeliefInterval const& dem,
                          BeliefInterval const& imp, WeightVector const& w) {
  for (auto const* b : {&nov, &dem, &imp}) {
    if (!(b->bel >= 0.0 && b->bel <= b->pl && b->pl <= 1.0)) {
      throw Error(ErrorCode::kDomainError, "belief intervals need 0 <= bel <= pl <= 1");
    }
  }
  IntervalIndex out{{1.0, 1.0}, {0.0, 0.0}, nov, dem, imp, w, false};
  auto factor = [&](BeliefInterval const& b, double weight) {
    if (weight == 0.0) return;
    double lo = b.bel, hi = b.pl;
    if (lo < IntervalIndex::kFloor) {
      lo = IntervalIndex::kFloor;
      out.floored = true;
    }
    if (hi < IntervalIndex::kFloor) {
      hi = IntervalIndex::kFloor;
      out.floored = true;
    }
    out.ix.bel *= std::pow(lo, weight);
    out.ix.pl *= std::pow(hi, weight);
    out.ln_ix.bel += weight * std::log(lo);
    out.ln_ix.pl += weight * std::log(hi);
  };
  factor(nov, w.nov());
  factor(dem, w.dem());
  factor(imp, w.imp());
  return out;
}

std::string write_bpa_csv(Bpa const& bpa) {
  std::string out = "focal_set,mass\n";
  for (auto const& [set, m] : bpa.masses()) {
    out += csv::format_row({set.to_string(), csv::format_number(m)});
  }
  return out;
}

Bpa read_bpa_csv(std::string_view text, FramePartition const& frame) {
  Bpa::MassMap masses;
  auto rows = csv::parse(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto const& row = rows[i];
    if (i == 0 && row.size() == 2 && row[0] == "focal_set") continue;
    if (row.size() != 2) {
      throw Error(ErrorCode::kSchemaError,
                  "BPA row " + std::to_string(i + 1) + ": expected 'focal_set,mass'");
    }
    auto mass = csv::parse_number(row[1]);
    if (!mass) {
      throw Error(ErrorCode::kSchemaError,
                  "BPA row " + std::to_string(i + 1) + ": bad mass '" + row[1] + "'");
    }
    auto set = FocalSet::parse(row[0], frame.size());
    if (masses.contains(set)) {
      throw Error(ErrorCode::kSchemaError,
                  "BPA row " + std::to_string(i + 1) + ": focal set listed twice");
    }
    masses.emplace(set, *mass);
  }
  try {
    return Bpa(frame, std::move(masses));
  } catch (Error const& e) {
    throw Error(ErrorCode::kSchemaError, e.what());
  }
}

}  // namespace innoindex
