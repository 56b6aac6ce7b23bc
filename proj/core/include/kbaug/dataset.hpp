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

#ifndef KBAUG_DATASET_HPP_
#define KBAUG_DATASET_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbaug/context_filter.hpp"
#include "kbaug/serializer.hpp"
#include "kbaug/tagger.hpp"

namespace kbaug {

enum class DatasetFormat { tsv, jsonl };

DatasetFormat parse_format(std::string_view name);

struct LoadOptions {
  // Drop questions that have no positive candidate ("clean" convention).
  bool clean = false;
};

struct Dataset {
  std::string name;
  std::string split;  // train, dev or test; empty when unknown
  std::vector<TaggedPair> pairs;
  bool tagged = false;
};

// TSV: qid <tab> question <tab> answer <tab> label(0/1). JSONL: objects
// with the same field names ("text" is accepted as a synonym for
// "answer"); label may be absent, cid is auto-assigned by row order
// within each qid when absent. Malformed rows raise with a line number.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const LoadOptions& options = {});

// Tags every pair in place against the index.
void tag_dataset(const LabelIndex& index, Dataset& dataset);

struct SplitStats {
  std::size_t n_pairs = 0;
  double pct_without_kb = 0.0;  // pairs with zero tags on both sides
  std::size_t n_correct_with_kb = 0;
  std::size_t n_incorrect_with_kb = 0;
};

// Requires a tagged, fully labeled dataset. A pair counts as "with KB"
// when at least one tag landed on either side.
SplitStats compute_split_stats(const Dataset& dataset);

// Percentage of pairs whose selection still has at least one context
// string after rendering (i.e. after collection-less picks are dropped).
double compute_filter_coverage(const Dataset& dataset, ContextFilter filter);

std::vector<ContextSelection> select_contexts(const Dataset& dataset,
                                              ContextFilter filter);

struct SerializeOptions {
  Placement placement = Placement::append;
  std::string sep_token = "<\\s>";
  std::size_t max_tokens = 256;
};

// Writes one JSON object per pair: qid, cid, question, text (the answer,
// as loaded), label, kb_tags (the answer's tags with kb_id, popularity,
// candidate_title, candidate_aliases, collection, relations) and the
// rendered training sequence. Returns the record count.
std::size_t write_augmented(const Dataset& dataset,
                            std::span<const ContextSelection> selections,
                            const SerializeOptions& options,
                            const std::filesystem::path& path);

// Percentage rendering used for all reported rates: three decimals with
// no leading zero, e.g. ".000%" and "30.000%".
std::string format_pct(double pct);

}  // namespace kbaug

#endif  // KBAUG_DATASET_HPP_
