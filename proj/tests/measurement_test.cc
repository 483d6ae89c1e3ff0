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

#include "innoindex/measurement.h"

#include "innoindex/ledger.h"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

namespace innoindex {
namespace {

using namespace std::chrono_literals;

Date d(char const* s) { return *parse_date(s); }

std::vector<Query> five_queries() {
  std::vector<Query> out;
  for (auto t : {"camera", "screen", "performance", "music", "battery"}) {
    out.push_back(Query({{"smartphone"}, {"iphone"}, {t}}));
  }
  return out;
}

std::vector<Date> yearly(int from, int to) {
  return make_grid(*parse_date(std::to_string(from) + "-01-01"),
                   *parse_date(std::to_string(to) + "-01-01"), {});
}

std::shared_ptr<Corpus const> random_corpus(unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<std::string> words = {"smartphone", "iphone", "camera", "screen",
                                    "performance", "music", "battery", "price"};
  std::vector<Document> docs;
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    for (auto const& w : words) {
      if (rng() % 2) text += w + " ";
    }
    docs.push_back(make_document("d" + std::to_string(i),
                                 d("2008-01-01") + std::chrono::days(rng() % 3650), text,
                                 static_cast<double>(rng() % 5)));
  }
  return std::make_shared<Corpus const>(std::move(docs));
}

// Scripted remote engine: fails the listed calls transiently or for good.
class ScriptedSource final : public EvidenceSource {
 public:
  ScriptedSource(int transient_failures, std::set<std::string> broken = {}, double rpm = 0)
      : transient_(transient_failures), broken_(std::move(broken)), rpm_(rpm) {}

  std::string const& id() const override { return id_; }
  SourceCapabilities capabilities() const override { return {rpm_, true, false}; }
  HitResult execute_query(Query const& q, DateWindow const& w) override {
    ++calls;
    auto text = q.canonical_text();
    if (broken_.contains(text + "@" + format_date(w.start))) {
      throw std::runtime_error("permanent");
    }
    if (transient_ > 0) {
      --transient_;
      throw TransientSourceError("throttled");
    }
    return {text, w, 3, 7.0};
  }

  int calls = 0;

 private:
  std::string id_ = "remote";
  int transient_;
  std::set<std::string> broken_;
  double rpm_;
};

struct FakeTime {
  std::chrono::steady_clock::time_point now{};
  std::vector<std::chrono::nanoseconds> sleeps;

  MeasureOptions options() {
    MeasureOptions o;
    o.clock = [this] { return now; };
    o.sleeper = [this](std::chrono::nanoseconds n) {
      sleeps.push_back(n);
      now += n;
    };
    return o;
  }
};

TEST(MeasureSeries, FivePeriodsTimesTenYears) {
  CorpusSource source("local", random_corpus(1));
  auto s = measure_series(source, "iphone", five_queries(), yearly(2008, 2018));
  EXPECT_EQ(s.period_count(), 10u);
  EXPECT_TRUE(s.complete());
  EXPECT_EQ(to_records(s).size(), 50u);
  EXPECT_EQ(s.cells[3][2]->window.start, d("2011-01-01"));
}

TEST(MeasureSeries, ParallelEqualsSerial) {
  for (unsigned seed : {2u, 3u, 4u}) {
    CorpusSource source("local", random_corpus(seed));
    for (int threads : {1, 2, 4}) {
      MeasureOptions o;
      o.max_threads = threads;
      auto par = measure_series(source, "x", five_queries(), yearly(2007, 2019), o);
      auto ser = measure_series_serial(source, "x", five_queries(), yearly(2007, 2019), o);
      EXPECT_EQ(par.cells, ser.cells);
    }
  }
}

TEST(MeasureSeries, EmptyCorpusGivesZeros) {
  CorpusSource source("empty", std::make_shared<Corpus const>());
  auto s = measure_series(source, "x", five_queries(), yearly(2008, 2018));
  for (auto const& r : to_records(s)) EXPECT_EQ(r.hits, 0u);
  EXPECT_EQ(to_records(s).size(), 50u);
}

TEST(MeasureSeries, Preconditions) {
  CorpusSource source("local", random_corpus(5));
  EXPECT_THROW(measure_series(source, "x", five_queries(), {d("2008-01-01")}), Error);
  EXPECT_THROW(measure_series(source, "x", {}, yearly(2008, 2010)), Error);
  EXPECT_THROW(measure_series_serial(source, "x", five_queries(), {d("2008-01-01")}), Error);
}

TEST(MeasureSeries, RetriesTransientFailuresWithBackoff) {
  FakeTime t;
  ScriptedSource source(2);
  auto s = measure_series(source, "x", {five_queries()[0]}, yearly(2008, 2009), t.options());
  EXPECT_TRUE(s.complete());
  EXPECT_EQ(source.calls, 3);
  EXPECT_EQ(t.sleeps, (std::vector<std::chrono::nanoseconds>{200ms, 400ms}));
}

TEST(MeasureSeries, GivesUpAfterMaxRetries) {
  FakeTime t;
  ScriptedSource source(100);
  auto o = t.options();
  o.retry.max_retries = 2;
  try {
    measure_series(source, "x", {five_queries()[0]}, yearly(2008, 2009), o);
    FAIL();
  } catch (SourceUnavailable const& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSourceUnavailable);
    EXPECT_EQ(e.partial().missing().size(), 1u);
  }
  EXPECT_EQ(source.calls, 3);
}

TEST(MeasureSeries, PermanentFailureKeepsPartialResults) {
  FakeTime t;
  auto queries = five_queries();
  ScriptedSource source(0, {queries[1].canonical_text() + "@2009-01-01"});
  try {
    measure_series(source, "x", queries, yearly(2008, 2011), t.options());
    FAIL();
  } catch (SourceUnavailable const& e) {
    auto const& partial = e.partial();
    ASSERT_EQ(partial.missing(),
              (std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}}));
    EXPECT_EQ(to_records(partial).size(), 14u);
    EXPECT_NE(std::string(e.what()).find("remote"), std::string::npos);
  }
}

TEST(MeasureSeries, RespectsRateLimit) {
  FakeTime t;
  ScriptedSource source(0, {}, 30);  // one request every 2 s
  auto s = measure_series(source, "x", five_queries(), yearly(2008, 2010), t.options());
  EXPECT_TRUE(s.complete());
  EXPECT_EQ(t.sleeps.size(), 9u);
  EXPECT_EQ(t.now - std::chrono::steady_clock::time_point{}, 18s);
}

}  // namespace
}  // namespace innoindex
