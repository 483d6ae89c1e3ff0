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

#include "oracles/oracles.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace innoindex {
namespace {

FramePartition const kTwo({0.0, 0.5, 1.0});
FramePartition const kFour = FramePartition::equal_bins(4);
FramePartition const kFive = FramePartition::equal_bins(5);

FocalSet set(std::size_t k, std::initializer_list<std::size_t> bins_1based) {
  std::uint64_t m = 0;
  for (auto b : bins_1based) m |= std::uint64_t{1} << (b - 1);
  return FocalSet(k, m);
}

double total(Bpa const& b) {
  double s = 0.0;
  for (auto const& [f, m] : b.masses()) s += m;
  return s;
}

// Random BPA with up to `max_focal` distinct focal sets.
Bpa random_bpa(std::mt19937& rng, FramePartition const& frame, std::size_t max_focal) {
  std::uint64_t const full = (std::uint64_t{1} << frame.size()) - 1;
  std::size_t n = 1 + rng() % max_focal;
  std::map<std::uint64_t, double> raw;
  for (std::size_t i = 0; i < n; ++i) {
    raw[1 + rng() % full] += std::uniform_real_distribution<double>(0.05, 1.0)(rng);
  }
  double s = 0.0;
  for (auto const& [m, w] : raw) s += w;
  Bpa::MassMap masses;
  double acc = 0.0;
  std::size_t i = 0;
  for (auto const& [m, w] : raw) {
    double v = ++i == raw.size() ? 1.0 - acc : w / s;
    acc += v;
    masses.emplace(FocalSet(frame.size(), m), v);
  }
  return Bpa(frame, masses);
}

TEST(FramePartition, Validation) {
  EXPECT_THROW(FramePartition({0.0, 1.0}), Error);
  EXPECT_THROW(FramePartition({0.0, 0.6, 0.5, 1.0}), Error);
  EXPECT_THROW(FramePartition({0.1, 0.5, 1.0}), Error);
  EXPECT_THROW(FramePartition::equal_bins(65), Error);
  EXPECT_EQ(kFive.size(), 5u);
}

TEST(FramePartition, BinsAreHalfOpenLastClosed) {
  EXPECT_EQ(kTwo.bin_of(0.0), 0u);
  EXPECT_EQ(kTwo.bin_of(0.4999), 0u);
  EXPECT_EQ(kTwo.bin_of(0.5), 1u);
  EXPECT_EQ(kTwo.bin_of(1.0), 1u);
  EXPECT_THROW(kTwo.bin_of(1.01), Error);
  EXPECT_THROW(kTwo.bin_of(-0.01), Error);
}

TEST(FocalSet, ParseAndPrint) {
  auto s = FocalSet::parse("1|3", 4);
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(s.to_string(), "1|3");
  EXPECT_THROW(FocalSet::parse("0", 4), Error);
  EXPECT_THROW(FocalSet::parse("5", 4), Error);
  EXPECT_THROW(FocalSet::parse("", 4), Error);
  EXPECT_THROW(FocalSet(4, 0), Error);
}

TEST(Bpa, Invariants) {
  EXPECT_THROW(Bpa(kTwo, {{set(2, {1}), 0.5}}), Error);
  Bpa b(kTwo, {{set(2, {1}), 0.5}, {set(2, {2}), 0.5}, {set(2, {1, 2}), 0.0}});
  EXPECT_EQ(b.masses().size(), 2u);
  EXPECT_TRUE(Bpa::vacuous(kTwo).is_vacuous());
}

TEST(MassFromSamples, Examples) {
  std::vector<double> s = {0.1, 0.2, 0.9};
  auto b = mass_from_samples(s, kTwo);
  EXPECT_NEAR(b.mass(set(2, {1})), 2.0 / 3, 1e-15);
  EXPECT_NEAR(b.mass(set(2, {2})), 1.0 / 3, 1e-15);
  EXPECT_TRUE(mass_from_samples({}, kTwo).is_vacuous());
  std::vector<double> one = {1.0};
  EXPECT_EQ(mass_from_samples(one, kFive).mass(set(5, {5})), 1.0);
  std::vector<double> bad = {1.5};
  EXPECT_THROW(mass_from_samples(bad, kFive), Error);
}

TEST(MassFromSamples, MissingSamplesGoToTheWholeFrame) {
  std::vector<double> s = {0.1, 0.9};
  auto b = mass_from_samples(s, kTwo, 4);
  EXPECT_EQ(b.mass(set(2, {1})), 0.25);
  EXPECT_EQ(b.mass(set(2, {2})), 0.25);
  EXPECT_EQ(b.mass(FocalSet::whole(2)), 0.5);
}

TEST(CombinePair, HandWorkedExample) {
  Bpa m1(kTwo, {{set(2, {1}), 0.6}, {set(2, {2}), 0.4}});
  Bpa m2(kTwo, {{set(2, {1}), 0.5}, {set(2, {2}), 0.5}});
  auto c = combine_pair_detailed(m1, m2);
  EXPECT_NEAR(c.conflict, 0.5, 1e-15);
  EXPECT_NEAR(conflict_mass(m1, m2), 0.5, 1e-15);
  EXPECT_NEAR(c.bpa.mass(set(2, {1})), 0.6, 1e-15);
  EXPECT_NEAR(c.bpa.mass(set(2, {2})), 0.4, 1e-15);
}

TEST(CombinePair, VacuousIsNeutral) {
  std::mt19937 rng(41);
  for (int i = 0; i < 100; ++i) {
    auto m = random_bpa(rng, kFour, 4);
    auto c = combine_pair(m, Bpa::vacuous(kFour));
    for (auto const& [f, v] : m.masses()) EXPECT_NEAR(c.mass(f), v, 1e-15);
    EXPECT_EQ(c.masses().size(), m.masses().size());
  }
}

TEST(CombinePair, TotalConflictAndFrameMismatch) {
  Bpa a(kTwo, {{set(2, {1}), 1.0}}), b(kTwo, {{set(2, {2}), 1.0}});
  EXPECT_THROW(combine_pair(a, b), TotalConflict);
  try {
    combine_pair(a, Bpa::vacuous(kFour));
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFrameMismatch);
  }
}

TEST(CombineAll, FoldIdentityAndOffendingPair) {
  Bpa a(kTwo, {{set(2, {1}), 1.0}}), b(kTwo, {{set(2, {1, 2}), 1.0}}),
      c(kTwo, {{set(2, {2}), 1.0}});
  std::vector<Bpa> single = {a};
  EXPECT_EQ(combine_all(single).masses(), a.masses());
  std::vector<Bpa> three = {a, b, c};
  try {
    combine_all(three);
    FAIL();
  } catch (TotalConflict const& e) {
    EXPECT_EQ(e.left(), 1u);
    EXPECT_EQ(e.right(), 2u);
  }
  EXPECT_THROW(combine_all(std::span<Bpa const>()), Error);
}

TEST(EvidenceProperty, CommutativeAndMassConserving) {
  std::mt19937 rng(42);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto a = random_bpa(rng, kFive, 5), b = random_bpa(rng, kFive, 5);
    if (!oracle::brute_force_combine({a, b})) continue;
    auto ab = combine_pair(a, b), ba = combine_pair(b, a);
    ASSERT_EQ(ab.masses().size(), ba.masses().size());
    for (auto const& [f, m] : ab.masses()) ASSERT_NEAR(ba.mass(f), m, 1e-12);
    ASSERT_NEAR(total(ab), 1.0, 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(EvidenceProperty, FoldMatchesBruteForceAndIsOrderInvariant) {
  std::mt19937 rng(43);
  for (int i = 0; i < 500; ++i) {
    std::vector<Bpa> srcs;
    for (int k = 0; k < 3; ++k) srcs.push_back(random_bpa(rng, kFour, 4));
    auto expected = oracle::brute_force_combine(srcs);
    if (!expected) {
      EXPECT_THROW(combine_all(srcs), TotalConflict);
      continue;
    }
    auto got = combine_all_detailed(srcs);
    for (auto const& [mask, m] : *expected) {
      ASSERT_NEAR(got.bpa.mass(FocalSet(4, mask)), m, 1e-9);
    }
    ASSERT_EQ(got.bpa.masses().size(), expected->size());
    std::vector<Bpa> rev = {srcs[2], srcs[0], srcs[1]};
    auto other = combine_all_detailed(rev);
    for (auto const& [f, m] : got.bpa.masses()) ASSERT_NEAR(other.bpa.mass(f), m, 1e-12);
    ASSERT_NEAR(got.conflict, other.conflict, 1e-12);
  }
}

TEST(EvidenceProperty, TreeMatchesFold) {
  std::mt19937 rng(44);
  for (int n : {1, 2, 3, 7, 16, 33}) {
    std::vector<Bpa> srcs;
    for (int k = 0; k < n; ++k) {
      // Keep mass on the whole frame so long chains never conflict totally.
      auto b = random_bpa(rng, kFive, 3);
      Bpa::MassMap m;
      for (auto const& [f, v] : b.masses()) m[f] += 0.5 * v;
      m[FocalSet::whole(5)] += 0.5;
      srcs.emplace_back(kFive, m);
    }
    auto fold = combine_all_detailed(srcs);
    auto tree = combine_tree(srcs);
    for (auto const& [f, m] : fold.bpa.masses()) EXPECT_NEAR(tree.bpa.mass(f), m, 1e-9);
    EXPECT_NEAR(tree.conflict, fold.conflict, 1e-9);
  }
  Bpa a(kTwo, {{set(2, {1}), 1.0}}), c(kTwo, {{set(2, {2}), 1.0}});
  std::vector<Bpa> bad = {a, Bpa::vacuous(kTwo), c, a};
  EXPECT_THROW(combine_tree(bad), TotalConflict);
}

TEST(BelPl, Examples) {
  Bpa b(kTwo, {{set(2, {1}), 0.3}, {set(2, {1, 2}), 0.7}});
  auto i = bel_pl(b, set(2, {1}));
  EXPECT_NEAR(i.bel, 0.3, 1e-15);
  EXPECT_NEAR(i.pl, 1.0, 1e-15);
  auto whole = bel_pl(b, FocalSet::whole(2));
  EXPECT_NEAR(whole.bel, 1.0, 1e-15);
  EXPECT_NEAR(whole.pl, 1.0, 1e-15);
  Bpa only1(kFour, {{set(4, {1}), 0.4}, {set(4, {1, 2}), 0.6}});
  EXPECT_EQ(bel_pl(only1, set(4, {3, 4})), (BeliefInterval{0.0, 0.0}));
  EXPECT_THROW(bel_pl(only1, set(5, {1})), Error);
}

TEST(EvidenceProperty, BeliefPlausibilityDuality) {
  std::mt19937 rng(45);
  for (int i = 0; i < 200; ++i) {
    auto b = random_bpa(rng, kFive, 6);
    std::map<std::uint64_t, double> raw;
    for (auto const& [f, m] : b.masses()) raw[f.mask()] = m;
    for (std::uint64_t q = 1; q < 32; ++q) {
      auto iv = bel_pl(b, FocalSet(5, q));
      ASSERT_LE(iv.bel, iv.pl);
      ASSERT_NEAR(iv.bel, oracle::belief(raw, q), 1e-12);
      ASSERT_NEAR(iv.pl, oracle::plausibility(raw, q), 1e-12);
      if (q != 31) {
        ASSERT_NEAR(iv.pl, 1.0 - bel_pl(b, FocalSet(5, 31 & ~q)).bel, 1e-12);
      }
      for (std::uint64_t r = q; r < 32; r = (r + 1) | q) {
        ASSERT_LE(iv.bel, bel_pl(b, FocalSet(5, r)).bel + 1e-15);
      }
    }
  }
}

TEST(IntervalIx, Examples) {
  BeliefInterval one{1, 1};
  auto id = interval_ix(one, one, one, WeightVector());
  EXPECT_NEAR(id.ix.bel, 1.0, 1e-15);
  EXPECT_NEAR(id.ln_ix.pl, 0.0, 1e-15);
  auto proj = interval_ix({0.2, 0.7}, {0.0, 0.1}, {0.0, 0.0}, WeightVector(1, 0, 0));
  EXPECT_NEAR(proj.ix.bel, 0.2, 1e-15);
  EXPECT_NEAR(proj.ix.pl, 0.7, 1e-15);
  EXPECT_FALSE(proj.floored);
  auto r = interval_ix({0.4, 0.6}, {0.25, 0.49}, one, WeightVector(0.5, 0.5, 0));
  EXPECT_NEAR(r.ix.bel, std::sqrt(0.4 * 0.25), 1e-12);
  EXPECT_NEAR(r.ix.pl, std::sqrt(0.6 * 0.49), 1e-12);
  EXPECT_NEAR(r.ix.bel, 0.316227766, 1e-9);
  EXPECT_NEAR(r.ix.pl, 0.542217668, 1e-9);
}

TEST(IntervalIx, ZeroBoundsAreFloored) {
  auto r = interval_ix({0.0, 0.5}, {0.5, 0.5}, {0.5, 0.5}, WeightVector());
  EXPECT_TRUE(r.floored);
  EXPECT_NEAR(r.ln_ix.bel, (std::log(1e-9) + 2 * std::log(0.5)) / 3, 1e-12);
  EXPECT_THROW(interval_ix({0.6, 0.5}, {0.5, 0.5}, {0.5, 0.5}, WeightVector()), Error);
}

TEST(EvidenceProperty, LogFormConsistentAndContainment) {
  std::mt19937 rng(46);
  std::uniform_real_distribution<double> u(0, 1);
  auto interval = [&] {
    double a = u(rng), b = u(rng);
    return BeliefInterval{std::min(a, b), std::max(a, b)};
  };
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng), b = u(rng) * (1 - a);
    WeightVector w(a, b, 1 - a - b);
    auto n = interval(), d = interval(), m = interval();
    auto r = interval_ix(n, d, m, w);
    ASSERT_NEAR(std::exp(r.ln_ix.bel), r.ix.bel, 1e-9);
    ASSERT_NEAR(std::exp(r.ln_ix.pl), r.ix.pl, 1e-9);
    ASSERT_LE(r.ix.bel, r.ix.pl);
    // Narrow each interval towards its midpoint.
    auto narrow = [&](BeliefInterval x) {
      double t = u(rng) * 0.5, mid = (x.bel + x.pl) / 2;
      return BeliefInterval{x.bel + t * (mid - x.bel), x.pl - t * (x.pl - mid)};
    };
    auto s = interval_ix(narrow(n), narrow(d), narrow(m), w);
    ASSERT_GE(s.ix.bel, r.ix.bel - 1e-15);
    ASSERT_LE(s.ix.pl, r.ix.pl + 1e-15);
  }
}

TEST(BpaCsv, RoundTrip) {
  Bpa b(kFour, {{set(4, {1, 2}), 0.7}, {set(4, {3}), 0.3}});
  auto text = write_bpa_csv(b);
  EXPECT_EQ(text, "focal_set,mass\n1|2,0.7\n3,0.3\n");
  EXPECT_EQ(read_bpa_csv(text, kFour).masses(), b.masses());
  EXPECT_EQ(read_bpa_csv("1|2,0.7\n3,0.3\n", kFour).masses(), b.masses());
  EXPECT_THROW(read_bpa_csv("focal_set,mass\n1|9,1\n", kFour), Error);
  EXPECT_THROW(read_bpa_csv("focal_set,mass\n1,abc\n", kFour), Error);
}

}  // namespace
}  // namespace innoindex
