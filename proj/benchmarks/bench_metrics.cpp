// Copyright 2026 The kbaug Authors.
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

#include <benchmark/benchmark.h>

#include <random>

#include "kbaug/metrics.hpp"

namespace {

using namespace kbaug;

std::vector<RankedQuery> synthetic_queries(int n_queries, int n_candidates) {
  std::mt19937 rng(4321);
  std::uniform_real_distribution<double> score(0, 1);
  std::vector<RankedQuery> queries;
  queries.reserve(static_cast<std::size_t>(n_queries));
  for (int q = 0; q < n_queries; ++q) {
    RankedQuery query;
    query.qid = "q" + std::to_string(q);
    for (int c = 0; c < n_candidates; ++c) {
      query.candidates.push_back(
          {"c" + std::to_string(c), score(rng), c == 0 ? 1 : 0});
    }
    queries.push_back(std::move(query));
  }
  return queries;
}

void BM_MeanAveragePrecision(benchmark::State& state) {
  const auto queries =
      synthetic_queries(static_cast<int>(state.range(0)), 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_average_precision(queries));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MeanAveragePrecision)->Arg(1000)->Arg(10000);

void BM_MeanReciprocalRank(benchmark::State& state) {
  const auto queries =
      synthetic_queries(static_cast<int>(state.range(0)), 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_reciprocal_rank(queries));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MeanReciprocalRank)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
