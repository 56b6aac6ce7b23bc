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

#ifndef KBAUG_ATTENTION_HPP_
#define KBAUG_ATTENTION_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kbaug {

// Attention weights for one example, indexed (layer, head, from_token,
// to_token). Every (layer, head, from) row is softmax-normalized: weights
// lie in [0,1] and sum to 1 within 1e-3.
struct AttentionRecord {
  std::vector<std::string> tokens;
  std::size_t n_layers = 0;
  std::size_t n_heads = 0;
  std::vector<double> weights;  // flattened [layer][head][from][to]

  double at(std::size_t layer, std::size_t head, std::size_t from,
            std::size_t to) const {
    const std::size_t t = tokens.size();
    return weights[((layer * n_heads + head) * t + from) * t + to];
  }
};

// Dump format: JSON {"tokens": [...], "layers": [...]} where layers has
// shape layers x heads x T x T. Validation failures name the offending
// (layer, head, row).
AttentionRecord load_attention_dump(const std::filesystem::path& path);
void write_attention_dump(const AttentionRecord& record,
                          const std::filesystem::path& path);

// How attention between keyword occurrences is collapsed to a single
// value per head when a keyword occurs more than once.
enum class PairAggregation { max, mean };

// Per-(layer, head) attention between two keywords: the aggregate over
// all (i, j) with token_i = from_keyword and token_j = to_keyword
// (case-insensitive whole-token match). A keyword that does not occur is
// an error listing the available tokens.
std::vector<std::vector<double>> pair_attention(
    const AttentionRecord& record, std::string_view from_keyword,
    std::string_view to_keyword, PairAggregation aggregation = PairAggregation::max);

struct LayerQuartiles {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Five-number summary per layer over heads, with linear-interpolation
// quantiles.
std::vector<LayerQuartiles> intensity_stats(
    const std::vector<std::vector<double>>& pair_weights);

// Number of heads per layer with weight strictly greater than the
// threshold. Threshold must lie in (0,1].
std::vector<std::size_t> active_head_counts(
    const std::vector<std::vector<double>>& pair_weights, double threshold);

struct PairAttentionReport {
  std::string keyword_from;
  std::string keyword_to;
  std::vector<LayerQuartiles> per_layer_quartiles;
  std::vector<std::size_t> active_counts;
  double threshold = 0.1;
};

PairAttentionReport analyze_pair(const AttentionRecord& record,
                                 std::string_view from_keyword,
                                 std::string_view to_keyword,
                                 double threshold = 0.1,
                                 PairAggregation aggregation = PairAggregation::max);

// Report renderings: a JSON document and an aligned-column text table.
std::string report_json(const PairAttentionReport& report);
std::string report_table(const PairAttentionReport& report);

}  // namespace kbaug

#endif  // KBAUG_ATTENTION_HPP_
