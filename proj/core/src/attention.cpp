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

#include "kbaug/attention.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "kbaug/normalize.hpp"

namespace kbaug {

namespace {

constexpr double kRowSumTolerance = 1e-3;

std::string cell_name(std::size_t layer, std::size_t head) {
  return "(layer " + std::to_string(layer) + ", head " + std::to_string(head) +
         ")";
}

// Linear-interpolation quantile over sorted values.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.size() == 1) return sorted.front();
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

AttentionRecord load_attention_dump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open attention dump: " + path.string());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("tokens") || !doc.contains("layers")) {
    throw std::runtime_error(path.string() +
                             ": expected {\"tokens\": [...], \"layers\": [...]}");
  }

  AttentionRecord record;
  for (const auto& t : doc["tokens"]) {
    if (!t.is_string()) throw std::runtime_error("tokens must be strings");
    record.tokens.push_back(t.get<std::string>());
  }
  if (record.tokens.empty()) throw std::runtime_error("empty token list");
  const std::size_t t_count = record.tokens.size();

  const auto& layers = doc["layers"];
  if (!layers.is_array() || layers.empty()) {
    throw std::runtime_error("'layers' must be a non-empty array");
  }
  record.n_layers = layers.size();
  record.n_heads = layers[0].is_array() ? layers[0].size() : 0;
  if (record.n_heads == 0) throw std::runtime_error("layer 0 has no heads");
  record.weights.reserve(record.n_layers * record.n_heads * t_count * t_count);

  for (std::size_t l = 0; l < record.n_layers; ++l) {
    const auto& layer = layers[l];
    if (!layer.is_array() || layer.size() != record.n_heads) {
      throw std::runtime_error("layer " + std::to_string(l) +
                               ": head count mismatch");
    }
    for (std::size_t h = 0; h < record.n_heads; ++h) {
      const auto& head = layer[h];
      if (!head.is_array() || head.size() != t_count) {
        throw std::runtime_error(cell_name(l, h) + ": expected " +
                                 std::to_string(t_count) + " rows");
      }
      for (std::size_t i = 0; i < t_count; ++i) {
        const auto& row = head[i];
        if (!row.is_array() || row.size() != t_count) {
          throw std::runtime_error(cell_name(l, h) + ", row " +
                                   std::to_string(i) + ": expected " +
                                   std::to_string(t_count) + " weights");
        }
        double sum = 0.0;
        for (const auto& w : row) {
          if (!w.is_number()) {
            throw std::runtime_error(cell_name(l, h) + ": non-numeric weight");
          }
          const double value = w.get<double>();
          if (!(value >= 0.0 && value <= 1.0)) {
            throw std::runtime_error(cell_name(l, h) + ", row " +
                                     std::to_string(i) +
                                     ": weight out of [0,1]");
          }
          sum += value;
          record.weights.push_back(value);
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.6f", sum);
          throw std::runtime_error("attention row does not sum to 1 at " +
                                   cell_name(l, h) + ", row " +
                                   std::to_string(i) + ": sum=" + buf);
        }
      }
    }
  }
  return record;
}

void write_attention_dump(const AttentionRecord& record,
                          const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["tokens"] = record.tokens;
  const std::size_t t_count = record.tokens.size();
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < record.n_layers; ++l) {
    nlohmann::json layer = nlohmann::json::array();
    for (std::size_t h = 0; h < record.n_heads; ++h) {
      nlohmann::json head = nlohmann::json::array();
      for (std::size_t i = 0; i < t_count; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < t_count; ++j) {
          row.push_back(record.at(l, h, i, j));
        }
        head.push_back(std::move(row));
      }
      layer.push_back(std::move(head));
    }
    layers.push_back(std::move(layer));
  }
  doc["layers"] = std::move(layers);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << doc.dump() << '\n';
}

std::vector<std::vector<double>> pair_attention(const AttentionRecord& record,
                                                std::string_view from_keyword,
                                                std::string_view to_keyword,
                                                PairAggregation aggregation) {
  auto occurrences = [&](std::string_view keyword) {
    const std::string needle = lowercase(keyword);
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < record.tokens.size(); ++i) {
      if (lowercase(record.tokens[i]) == needle) hits.push_back(i);
    }
    if (hits.empty()) {
      std::string msg = "keyword '" + std::string(keyword) +
                        "' not found; tokens are:";
      for (const auto& t : record.tokens) msg += ' ' + t;
      throw std::runtime_error(msg);
    }
    return hits;
  };
  const auto from_positions = occurrences(from_keyword);
  const auto to_positions = occurrences(to_keyword);

  std::vector<std::vector<double>> out(
      record.n_layers, std::vector<double>(record.n_heads, 0.0));
  const double pair_count =
      static_cast<double>(from_positions.size() * to_positions.size());
  for (std::size_t l = 0; l < record.n_layers; ++l) {
    for (std::size_t h = 0; h < record.n_heads; ++h) {
      double agg = 0.0;
      if (aggregation == PairAggregation::max) {
        for (auto i : from_positions) {
          for (auto j : to_positions) {
            agg = std::max(agg, record.at(l, h, i, j));
          }
        }
      } else {
        for (auto i : from_positions) {
          for (auto j : to_positions) agg += record.at(l, h, i, j);
        }
        agg /= pair_count;
      }
      out[l][h] = agg;
    }
  }
  return out;
}

std::vector<LayerQuartiles> intensity_stats(
    const std::vector<std::vector<double>>& pair_weights) {
  if (pair_weights.empty()) throw std::runtime_error("no layers");
  std::vector<LayerQuartiles> out;
  out.reserve(pair_weights.size());
  for (const auto& heads : pair_weights) {
    if (heads.empty()) throw std::runtime_error("layer with no heads");
    std::vector<double> sorted(heads);
    std::sort(sorted.begin(), sorted.end());
    LayerQuartiles q;
    q.min = sorted.front();
    q.q1 = quantile(sorted, 0.25);
    q.median = quantile(sorted, 0.5);
    q.q3 = quantile(sorted, 0.75);
    q.max = sorted.back();
    out.push_back(q);
  }
  return out;
}

std::vector<std::size_t> active_head_counts(
    const std::vector<std::vector<double>>& pair_weights, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::runtime_error("threshold must be within (0,1]");
  }
  std::vector<std::size_t> counts;
  counts.reserve(pair_weights.size());
  for (const auto& heads : pair_weights) {
    counts.push_back(static_cast<std::size_t>(
        std::count_if(heads.begin(), heads.end(),
                      [&](double w) { return w > threshold; })));
  }
  return counts;
}

PairAttentionReport analyze_pair(const AttentionRecord& record,
                                 std::string_view from_keyword,
                                 std::string_view to_keyword, double threshold,
                                 PairAggregation aggregation) {
  const auto weights =
      pair_attention(record, from_keyword, to_keyword, aggregation);
  PairAttentionReport report;
  report.keyword_from = std::string(from_keyword);
  report.keyword_to = std::string(to_keyword);
  report.per_layer_quartiles = intensity_stats(weights);
  report.active_counts = active_head_counts(weights, threshold);
  report.threshold = threshold;
  return report;
}

std::string report_json(const PairAttentionReport& report) {
  nlohmann::ordered_json doc;
  doc["keyword_from"] = report.keyword_from;
  doc["keyword_to"] = report.keyword_to;
  doc["threshold"] = report.threshold;
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < report.per_layer_quartiles.size(); ++l) {
    const auto& q = report.per_layer_quartiles[l];
    nlohmann::ordered_json layer;
    layer["layer"] = l;
    layer["min"] = q.min;
    layer["q1"] = q.q1;
    layer["median"] = q.median;
    layer["q3"] = q.q3;
    layer["max"] = q.max;
    layer["active_heads"] = report.active_counts[l];
    layers.push_back(std::move(layer));
  }
  doc["layers"] = std::move(layers);
  return doc.dump(2);
}

std::string report_table(const PairAttentionReport& report) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof(buf), "attention %s -> %s (threshold %.2f)\n",
                report.keyword_from.c_str(), report.keyword_to.c_str(),
                report.threshold);
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-6s %-8s %-8s %-8s %-8s %-8s %s\n", "layer",
                "min", "q1", "median", "q3", "max", "active");
  out += buf;
  for (std::size_t l = 0; l < report.per_layer_quartiles.size(); ++l) {
    const auto& q = report.per_layer_quartiles[l];
    std::snprintf(buf, sizeof(buf),
                  "%-6zu %-8.4f %-8.4f %-8.4f %-8.4f %-8.4f %zu\n", l, q.min,
                  q.q1, q.median, q.q3, q.max, report.active_counts[l]);
    out += buf;
  }
  return out;
}

}  // namespace kbaug
