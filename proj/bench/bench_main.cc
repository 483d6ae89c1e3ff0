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

// Parallel kernels against their serial references.

#include "innoindex/corpus.h"
#include "innoindex/evidence.h"
#include "innoindex/measurement.h"
#include "innoindex/source.h"

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace innoindex;

std::vector<std::string> const kVocabulary = {"phone", "camera", "screen", "battery", "music",
                                              "speed", "review", "price",  "launch",  "store"};

struct Workload {
  std::shared_ptr<Corpus const> corpus;
  std::vector<Query> queries;
  std::vector<Date> grid;
};

Workload const& workload() {
  static Workload const w = [] {
    std::mt19937_64 rng(42);
    auto start = *parse_date("2000-01-01");
    auto grid = make_grid(start, *parse_date("2020-01-01"), {});
    std::vector<Document> docs;
    for (int i = 0; i < 50000; ++i) {
      std::string text;
      for (int k = 0; k < 8; ++k) text += kVocabulary[rng() % kVocabulary.size()] + " ";
      docs.push_back(make_document(std::to_string(i), start + std::chrono::days(rng() % 7300),
                                   text));
    }
    std::vector<Query> queries;
    for (std::size_t a = 1; a < kVocabulary.size(); ++a) {
      for (std::size_t b = a + 1; b < kVocabulary.size(); ++b) {
        queries.emplace_back(std::vector<Query::TermGroup>{{"phone"}, {kVocabulary[a]},
                                                           {kVocabulary[b]}});
      }
    }
    return Workload{std::make_shared<Corpus const>(std::move(docs)), std::move(queries),
                    std::move(grid)};
  }();
  return w;
}

template <auto Measure>
void BM_Measure(benchmark::State& state) {
  auto const& w = workload();
  CorpusSource source("bench", w.corpus);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Measure(source, "o", w.queries, w.grid, MeasureOptions{}));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(w.queries.size() * (w.grid.size() - 1)));
}
BENCHMARK(BM_Measure<measure_series_serial>)->Name("measure_series_serial")->UseRealTime();
BENCHMARK(BM_Measure<measure_series>)->Name("measure_series")->UseRealTime();

std::vector<Bpa> random_sources(std::size_t n) {
  std::mt19937_64 rng(7);
  auto frame = FramePartition::equal_bins(10);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Bpa> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> samples(40);
    for (auto& s : samples) s = u(rng);
    // Room left for the whole frame keeps long folds free of total conflict.
    out.push_back(mass_from_samples(samples, frame, 50));
  }
  return out;
}

void BM_CombineAll(benchmark::State& state) {
  auto sources = random_sources(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(combine_all_detailed(sources));
}
BENCHMARK(BM_CombineAll)->Arg(64)->Arg(512)->UseRealTime();

void BM_CombineTree(benchmark::State& state) {
  auto sources = random_sources(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(combine_tree(sources));
}
BENCHMARK(BM_CombineTree)->Arg(64)->Arg(512)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
