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

#include "innoindex/corpus.h"

#include "innoindex/error.h"
#include "oracles/oracles.h"

#include <gtest/gtest.h>

#include <random>

namespace innoindex {
namespace {

Date d(char const* s) { return *parse_date(s); }

Query q(std::vector<std::vector<std::string>> groups) { return Query(std::move(groups)); }

Query const kPhoneCamera = q({{"smartphone"}, {"iphone"}, {"camera"}});
DateWindow const kAll{d("2000-01-01"), d("2100-01-01")};

TEST(ParseCorpus, ValidRecords) {
  auto c = parse_corpus(
      R"({"id":"a","date":"2010-05-01","text":"Smartphone iPhone camera"})"
      "\n\n"
      R"({"id":"b","date":"2009-01-01","text":"screen","freq":3})"
      "\n"
      R"({"id":"c","date":"2011-12-31","text":"camera, music"})"
      "\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.documents()[0].id, "b");
  EXPECT_EQ(c.first_date(), d("2009-01-01"));
  EXPECT_EQ(c.last_date(), d("2011-12-31"));
  EXPECT_EQ(c.span().end, d("2012-01-01"));
  EXPECT_EQ(c.documents()[1].terms, (std::vector<std::string>{"camera", "iphone", "smartphone"}));
  EXPECT_EQ(c.documents()[0].freq, 3.0);
}

TEST(ParseCorpus, MalformedRecordsNameTheLine) {
  auto expect_line = [](std::string const& text, std::string const& line) {
    try {
      parse_corpus(text);
      ADD_FAILURE() << text;
    } catch (Error const& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedCorpus);
      EXPECT_NE(std::string(e.what()).find(line), std::string::npos) << e.what();
    }
  };
  std::string ok = R"({"id":"a","date":"2010-05-01","text":"x"})";
  expect_line(ok + "\n" + R"({"id":"b","text":"x"})", "line 2");
  expect_line(R"({"id":"b","date":"2010-13-01","text":"x"})", "line 1");
  expect_line(ok + "\n" + ok, "line 2");
  expect_line("not json", "line 1");
  expect_line(R"({"id":"b","date":"2010-01-01","text":"x","freq":-1})", "line 1");
}

TEST(ParseCorpus, EmptyIsDegenerate) {
  auto c = parse_corpus("");
  EXPECT_EQ(c.size(), 0u);
  EXPECT_TRUE(c.degenerate());
  EXPECT_EQ(execute_query(c, kPhoneCamera, kAll).hit_count, 0u);
}

TEST(LoadCorpus, MissingFile) {
  try {
    load_corpus("/no/such/corpus.jsonl");
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(ExecuteQuery, ConjunctsAndOrGroups) {
  Corpus one({make_document("a", d("2010-01-01"), "smartphone iphone camera")});
  EXPECT_EQ(execute_query(one, kPhoneCamera, kAll).hit_count, 1u);
  Corpus screen({make_document("a", d("2010-01-01"), "smartphone iphone screen")});
  EXPECT_EQ(execute_query(screen, kPhoneCamera, kAll).hit_count, 0u);
  std::vector<Document> docs = {make_document("a", d("2010-01-01"), "smartphone iphone cam")};
  auto expanded = q({{"smartphone"}, {"iphone"}, {"camera", "cam"}});
  auto r = execute_query(Corpus(docs), expanded, kAll);
  EXPECT_EQ(r.hit_count, 1u);
  EXPECT_EQ(r, oracle::linear_scan(docs, expanded, kAll));
  EXPECT_EQ(r.query, "smartphone AND iphone AND (camera OR cam)");
}

TEST(ExecuteQuery, FrequencyUsesFreqField) {
  Corpus c({make_document("a", d("2010-01-01"), "x y", 2.5),
            make_document("b", d("2010-02-01"), "x y"),
            make_document("c", d("2010-03-01"), "x", 7.0)});
  auto r = execute_query(c, q({{"x"}, {"y"}}), kAll);
  EXPECT_EQ(r.hit_count, 2u);
  EXPECT_DOUBLE_EQ(r.frequency, 3.5);
}

TEST(ExecuteQuery, WindowsAreHalfOpenAndClipped) {
  Corpus c({make_document("a", d("2010-01-01"), "x"), make_document("b", d("2011-01-01"), "x")});
  EXPECT_EQ(execute_query(c, q({{"x"}}), {d("2010-01-01"), d("2011-01-01")}).hit_count, 1u);
  EXPECT_EQ(execute_query(c, q({{"x"}}), {d("2011-01-01"), d("2012-01-01")}).hit_count, 1u);
  EXPECT_EQ(execute_query(c, q({{"x"}}), {d("2012-01-01"), d("2013-01-01")}).hit_count, 0u);
  auto r = execute_query(c, q({{"x"}}), {d("1990-01-01"), d("2030-01-01")});
  EXPECT_EQ(r.hit_count, 2u);
  EXPECT_EQ(r.window.start, d("1990-01-01"));
}

struct RandomCorpus {
  std::vector<Document> docs;
  std::vector<Query> queries;
};

RandomCorpus random_corpus(std::mt19937& rng, std::size_t n_docs) {
  std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
  RandomCorpus rc;
  std::uniform_int_distribution<int> day(0, 3650);
  for (std::size_t i = 0; i < n_docs; ++i) {
    std::string text;
    for (auto const& w : vocab) {
      if (rng() % 3 == 0) text += w + " ";
    }
    std::optional<double> freq;
    if (rng() % 2) freq = static_cast<double>(rng() % 10);
    rc.docs.push_back(make_document("doc" + std::to_string(i),
                                    d("2005-01-01") + std::chrono::days(day(rng)), text, freq));
  }
  for (int k = 0; k < 30; ++k) {
    std::vector<std::vector<std::string>> groups;
    std::size_t n = rng() % 4;
    for (std::size_t g = 0; g < n; ++g) {
      std::vector<std::string> group;
      std::size_t m = 1 + rng() % 2;
      for (std::size_t j = 0; j < m; ++j) group.push_back(vocab[rng() % vocab.size()]);
      groups.push_back(group);
    }
    if (groups.empty()) groups.push_back({"zzz"});
    rc.queries.push_back(Query(groups));
  }
  return rc;
}

TEST(ExecuteQueryProperty, EqualsLinearScanOracle) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto rc = random_corpus(rng, 1 + rng() % 1000);
    Corpus corpus(rc.docs);
    for (auto const& query : rc.queries) {
      Date a = d("2004-06-01") + std::chrono::days(rng() % 4000);
      DateWindow w{a, a + std::chrono::days(rng() % 2000)};
      auto expected = oracle::linear_scan(rc.docs, query, w);
      auto got = execute_query(corpus, query, w);
      ASSERT_EQ(got.hit_count, expected.hit_count) << query.canonical_text();
      ASSERT_DOUBLE_EQ(got.frequency, expected.frequency);
    }
  }
}

TEST(ExecuteQueryProperty, WindowAdditivity) {
  std::mt19937 rng(12);
  auto rc = random_corpus(rng, 800);
  Corpus corpus(rc.docs);
  std::vector<Date> cuts = {corpus.first_date()};
  while (cuts.back() < corpus.span().end) cuts.push_back(cuts.back() + std::chrono::days(rng() % 500 + 1));
  for (auto const& query : rc.queries) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      sum += execute_query(corpus, query, {cuts[i], cuts[i + 1]}).hit_count;
    }
    EXPECT_EQ(sum, execute_query(corpus, query, corpus.span()).hit_count);
  }
}

TEST(ExecuteQueryProperty, AddingAMatchingDocumentNeverDecreasesHits) {
  std::mt19937 rng(13);
  auto rc = random_corpus(rng, 300);
  Corpus before(rc.docs);
  DateWindow w{d("2007-01-01"), d("2012-01-01")};
  for (auto const& query : rc.queries) {
    std::string text;
    for (auto const& g : query.conjuncts()) text += g.front() + " ";
    auto docs = rc.docs;
    docs.push_back(make_document("extra", d("2009-06-01"), text));
    EXPECT_GE(execute_query(Corpus(docs), query, w).hit_count,
              execute_query(before, query, w).hit_count);
  }
}

}  // namespace
}  // namespace innoindex
