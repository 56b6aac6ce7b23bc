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

#ifndef KBAUG_TESTS_TESTUTIL_HPP_
#define KBAUG_TESTS_TESTUTIL_HPP_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "kbaug/kb.hpp"
#include "kbaug/metrics.hpp"

namespace kbaug::testutil {

// Small shared vocabulary so that random KBs and texts collide often.
inline const std::vector<std::string>& vocab() {
  static const std::vector<std::string> v = {
      "alpha", "bravo", "charlie", "delta", "echo",  "foxtrot", "golf",
      "hotel", "india", "juliet",  "kilo",  "lima",  "mike",    "november",
      "oscar", "papa",  "quebec",  "romeo", "sierra", "tango",  "uniform",
      "victor", "whiskey", "xray", "yankee", "zulu",  "0",      "1",
      "2",     "7",     "57",      "1962",  "old",   "years",   "the",
      "husband", "camel", "drug",  "king",  "river"};
  return v;
}

struct Rng {
  std::mt19937 engine;
  explicit Rng(std::uint32_t seed) : engine(seed) {}

  int between(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine);
  }
  double real01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine);
  }
  const std::string& word() {
    return vocab()[static_cast<std::size_t>(between(0, static_cast<int>(vocab().size()) - 1))];
  }
  // Coarse popularity grid half of the time, so ties actually happen.
  double popularity() {
    if (between(0, 1) == 0) return 0.1 * between(1, 9);
    return std::round(real01() * 1000.0) / 1000.0;
  }
};

inline std::string random_label(Rng& rng, int max_tokens) {
  const int n = rng.between(1, max_tokens);
  std::string label;
  for (int i = 0; i < n; ++i) {
    if (!label.empty()) label += ' ';
    label += rng.word();
  }
  return label;
}

// `all_collections` guarantees every entry has a non-empty collection,
// which some coverage properties require as a premise.
inline std::vector<KbEntry> random_kb(Rng& rng, int n_entries,
                                      bool all_collections = false) {
  static const std::vector<std::string> collections = {
      "celebrity", "quantity", "animal", "generic drug", "book", "album"};
  std::vector<KbEntry> entries;
  entries.reserve(static_cast<std::size_t>(n_entries));
  for (int i = 0; i < n_entries; ++i) {
    KbEntry entry;
    entry.kb_id = "e-" + std::to_string(1000 + i);
    entry.canonical_label = random_label(rng, 3);
    const int n_aliases = rng.between(0, 2);
    for (int a = 0; a < n_aliases; ++a) {
      entry.aliases.push_back(random_label(rng, 3));
    }
    entry.popularity = rng.popularity();
    if (all_collections || rng.between(0, 3) > 0) {
      entry.collection =
          collections[static_cast<std::size_t>(rng.between(0, 5))];
    }
    if (rng.between(0, 1) == 0) entry.relations.push_back("related_to");
    entries.push_back(std::move(entry));
  }
  return entries;
}

inline std::string random_text(Rng& rng, int max_tokens) {
  const int n = rng.between(0, max_tokens);
  std::string text;
  for (int i = 0; i < n; ++i) {
    if (!text.empty()) text += ' ';
    text += rng.word();
  }
  return text;
}

inline std::vector<RankedQuery> random_queries(Rng& rng, int n_queries,
                                               int max_candidates = 12) {
  std::vector<RankedQuery> queries;
  for (int q = 0; q < n_queries; ++q) {
    RankedQuery query;
    query.qid = "q" + std::to_string(q);
    const int n = rng.between(1, max_candidates);
    const int positive_at = rng.between(0, n - 1);
    for (int c = 0; c < n; ++c) {
      RankedCandidate cand;
      cand.cid = "c" + std::to_string(c);
      // Quantized scores produce ties, exercising the cid tie-break.
      cand.score = 0.05 * rng.between(0, 20);
      cand.label = (c == positive_at || rng.between(0, 4) == 0) ? 1 : 0;
      query.candidates.push_back(std::move(cand));
    }
    queries.push_back(std::move(query));
  }
  return queries;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    path_ = base / ("kbaug_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }
  std::filesystem::path write(const std::string& name,
                              const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream out(p);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline std::filesystem::path data_file(const std::string& name) {
  return std::filesystem::path(KBAUG_TEST_DATA_DIR) / name;
}

}  // namespace kbaug::testutil

#endif  // KBAUG_TESTS_TESTUTIL_HPP_
