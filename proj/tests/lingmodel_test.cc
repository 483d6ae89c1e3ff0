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

#include "innoindex/lingmodel.h"

#include "innoindex/error.h"
#include "innoindex/text.h"
#include "oracles/oracles.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

namespace innoindex {
namespace {

constexpr char kSmartphone[] = R"(
[marker]
smartphone iphone
[class:application]
camera
screen
performance
music
battery
[limits]
terms_per_query = 3
)";

ErrorCode code_of(std::string_view text) {
  try {
    parse_model(text);
  } catch (Error const& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::kPrecondition;
}

std::vector<std::string> texts(std::vector<Query> const& qs) {
  std::vector<std::string> out;
  for (auto const& q : qs) out.push_back(q.canonical_text());
  return out;
}

TEST(ParseModel, SmartphoneModel) {
  auto m = parse_model(kSmartphone);
  ASSERT_EQ(m.marker().size(), 2u);
  EXPECT_EQ(m.marker()[0].text, "smartphone");
  EXPECT_EQ(m.marker()[1].text, "iphone");
  EXPECT_EQ(m.archetype_terms().size(), 5u);
  EXPECT_EQ(m.terms_per_query(), 3u);
  EXPECT_FALSE(m.max_queries());
}

TEST(ParseModel, WeightsAndDefaults) {
  auto m = parse_model("[marker]\nx\n[class:structure]\na weight=0.5\nb\n");
  EXPECT_EQ(m.terms_per_query(), 2u);
  EXPECT_DOUBLE_EQ(m.archetype_terms()[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(m.archetype_terms()[1].weight, 1.0);
}

TEST(ParseModel, Rejections) {
  EXPECT_EQ(code_of("[class:application]\ncamera\n"), ErrorCode::kMalformedModel);
  EXPECT_EQ(code_of("[marker]\n[class:application]\ncamera\n"), ErrorCode::kMalformedModel);
  EXPECT_EQ(code_of("[marker]\nx\n[class:colour]\nred\n"), ErrorCode::kMalformedModel);
  EXPECT_EQ(code_of("[marker]\nx\n[class:results]\na\n[class:results]\nb\n"),
            ErrorCode::kMalformedModel);
  EXPECT_EQ(code_of("[marker]\nx\n[class:results]\na\n[synonyms]\nzeta: z\n"),
            ErrorCode::kDanglingSynonym);
  EXPECT_EQ(code_of("[marker]\nx y\n[class:results]\na\n[limits]\nterms_per_query=2\n"),
            ErrorCode::kConstraintViolation);
  EXPECT_EQ(code_of("[marker]\nx\n[class:results]\na\n[limits]\nterms_per_query=3\n"),
            ErrorCode::kConstraintViolation);
  EXPECT_EQ(code_of("[marker]\nx\n[class:results]\na\n[limits]\nmax_queries=0\n"),
            ErrorCode::kConstraintViolation);
  EXPECT_EQ(code_of("[marker]\nx\n[class:results]\na weight=-1\n"),
            ErrorCode::kConstraintViolation);
  EXPECT_EQ(code_of("[marker]\nx\n[class:results]\nx\n"), ErrorCode::kMalformedModel);
}

TEST(ParseModel, ErrorsCarryLineNumbers) {
  try {
    parse_model("[marker]\nx\n[class:results]\na\n[limits]\nbogus=1\n");
    FAIL();
  } catch (Error const& e) {
    EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
  }
}

TEST(LoadModel, MissingFile) {
  try {
    load_model("/no/such/model.txt");
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
    EXPECT_NE(std::string(e.what()).find("/no/such/model.txt"), std::string::npos);
  }
}

TEST(GenerateQueries, FiveSmartphoneQueries) {
  EXPECT_EQ(texts(generate_queries(parse_model(kSmartphone))),
            (std::vector<std::string>{"smartphone AND iphone AND camera",
                                      "smartphone AND iphone AND screen",
                                      "smartphone AND iphone AND performance",
                                      "smartphone AND iphone AND music",
                                      "smartphone AND iphone AND battery"}));
}

TEST(GenerateQueries, CyrillicModelLowercases) {
  auto m = parse_model(
      "[marker]\nсмартфон iPhone\n[class:application]\nкамера\nэкран\n"
      "производительность\nмузыка\nаккумулятор\n[limits]\nterms_per_query=3\n");
  auto qs = texts(generate_queries(m));
  ASSERT_EQ(qs.size(), 5u);
  EXPECT_EQ(qs[0], "смартфон AND iphone AND камера");
  EXPECT_EQ(qs[4], "смартфон AND iphone AND аккумулятор");
}

TEST(GenerateQueries, PairsInLexicographicOrder) {
  std::string text = kSmartphone;
  text.replace(text.find("= 3"), 3, "= 4");
  auto qs = generate_queries(parse_model(text));
  std::vector<std::string> terms = {"camera", "screen", "performance", "music", "battery"};
  std::vector<std::string> expected;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      expected.push_back("smartphone AND iphone AND " + terms[i] + " AND " + terms[j]);
    }
  }
  EXPECT_EQ(texts(qs), expected);
}

TEST(GenerateQueries, MaxQueriesTruncates) {
  auto qs = generate_queries(parse_model(std::string(kSmartphone) + "max_queries=2\n"));
  EXPECT_EQ(texts(qs), (std::vector<std::string>{"smartphone AND iphone AND camera",
                                                 "smartphone AND iphone AND screen"}));
}

// Count, uniqueness and marker placement against a recursive enumeration.
TEST(GenerateQueries, MatchesCombinationOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n_marker = 1 + rng() % 3;
    std::size_t n_classes = 1 + rng() % 3;
    std::vector<Term> marker;
    for (std::size_t i = 0; i < n_marker; ++i) marker.push_back({"m" + std::to_string(i), 1.0});
    std::vector<ArchetypeClass> classes;
    std::vector<std::string> flat;
    ArchetypeKind kinds[] = {ArchetypeKind::kStructure, ArchetypeKind::kApplication,
                             ArchetypeKind::kResults};
    for (std::size_t c = 0; c < n_classes; ++c) {
      ArchetypeClass cls{kinds[c], {}};
      std::size_t n = 1 + rng() % 4;
      for (std::size_t i = 0; i < n; ++i) {
        std::string t = "t" + std::to_string(c) + "x" + std::to_string(i);
        cls.terms.push_back({t, 1.0});
        flat.push_back(t);
      }
      classes.push_back(cls);
    }
    std::size_t k = 1 + rng() % flat.size();
    auto model = LinguisticModel::create(marker, classes, {}, n_marker + k);
    auto qs = generate_queries(model);
    auto combos = oracle::combinations(flat.size(), k);
    ASSERT_EQ(qs.size(), combos.size());
    std::set<std::string> unique;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      auto const& conj = qs[i].conjuncts();
      ASSERT_EQ(conj.size(), n_marker + k);
      for (std::size_t j = 0; j < n_marker; ++j) EXPECT_EQ(conj[j][0], marker[j].text);
      for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(conj[n_marker + j][0], flat[combos[i][j]]);
      unique.insert(qs[i].canonical_text());
    }
    EXPECT_EQ(unique.size(), qs.size());
  }
}

TEST(ExpandSynonyms, SubstitutesAndIsIdempotent) {
  auto m = parse_model(std::string(kSmartphone) + "[synonyms]\ncamera: cam, photo\n");
  auto q = generate_queries(m)[0];
  auto once = expand_synonyms(q, m);
  EXPECT_EQ(once.canonical_text(), "smartphone AND iphone AND (camera OR cam OR photo)");
  EXPECT_EQ(expand_synonyms(once, m), once);
  auto plain = generate_queries(m)[1];
  EXPECT_EQ(expand_synonyms(plain, m), plain);
}

TEST(Archetype, KindNames) {
  for (auto k : {ArchetypeKind::kStructure, ArchetypeKind::kApplication, ArchetypeKind::kResults}) {
    EXPECT_EQ(parse_archetype_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_archetype_kind("colour"));
}

}  // namespace
}  // namespace innoindex
