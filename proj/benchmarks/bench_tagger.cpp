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
#include <string>
#include <vector>

#include "kbaug/kb.hpp"
#include "kbaug/tagger.hpp"

namespace {

using namespace kbaug;

std::vector<std::string> bench_vocab() {
  std::vector<std::string> vocab;
  for (int i = 0; i < 200; ++i) vocab.push_back("w" + std::to_string(i));
  return vocab;
}

std::vector<KbEntry> synthetic_kb(int n_entries) {
  std::mt19937 rng(12345);
  const auto vocab = bench_vocab();
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(1, 3);
  std::vector<KbEntry> entries;
  entries.reserve(static_cast<std::size_t>(n_entries));
  for (int i = 0; i < n_entries; ++i) {
    KbEntry entry;
    entry.kb_id = "e-" + std::to_string(i);
    for (int t = len(rng); t > 0; --t) {
      if (!entry.canonical_label.empty()) entry.canonical_label += ' ';
      entry.canonical_label += vocab[pick(rng)];
    }
    entry.popularity = std::uniform_real_distribution<double>(0, 1)(rng);
    entry.collection = "collection";
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string synthetic_text(int n_tokens) {
  std::mt19937 rng(777);
  const auto vocab = bench_vocab();
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::string text;
  for (int i = 0; i < n_tokens; ++i) {
    if (!text.empty()) text += ' ';
    text += vocab[pick(rng)];
  }
  return text;
}

void BM_BuildIndex(benchmark::State& state) {
  const auto entries = synthetic_kb(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto index = LabelIndex::build(std::vector<KbEntry>(entries));
    benchmark::DoNotOptimize(index.label_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_TagText(benchmark::State& state) {
  const auto index = LabelIndex::build(synthetic_kb(static_cast<int>(state.range(0))));
  const auto text = synthetic_text(40);
  for (auto _ : state) {
    auto tagged = tag_text(index, text);
    benchmark::DoNotOptimize(tagged.spans.size());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TagText)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
