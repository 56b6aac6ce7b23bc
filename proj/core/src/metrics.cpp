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

#include "kbaug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace kbaug {

namespace {

void validate_query(const RankedQuery& query) {
  if (query.candidates.empty()) {
    throw std::runtime_error("query '" + query.qid + "' has no candidates");
  }
  for (const auto& c : query.candidates) {
    if (!std::isfinite(c.score)) {
      throw std::runtime_error("non-finite score for (qid=" + query.qid +
                               ", cid=" + c.cid + ")");
    }
  }
}

bool has_positive(const RankedQuery& query) {
  return std::any_of(query.candidates.begin(), query.candidates.end(),
                     [](const RankedCandidate& c) { return c.label == 1; });
}

// Candidate indices in rank order: descending score, then cid ascending.
std::vector<std::size_t> rank_order(const RankedQuery& query) {
  std::vector<std::size_t> order(query.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = query.candidates[a];
    const auto& cb = query.candidates[b];
    if (ca.score != cb.score) return ca.score > cb.score;
    return ca.cid < cb.cid;
  });
  return order;
}

// Shared fold over queries: `per_query` maps one ranked query to its
// contribution; the result is the mean over the queries that count.
template <typename F>
double mean_over_queries(std::span<const RankedQuery> queries,
                         const EvalOptions& options, F per_query) {
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& query : queries) {
    validate_query(query);
    if (!has_positive(query)) {
      if (options.allow_no_positive) continue;
      throw std::runtime_error("query '" + query.qid +
                               "' has no positive candidate "
                               "(pass --allow-no-positive to exclude it)");
    }
    sum += per_query(query);
    ++used;
  }
  if (used == 0) {
    throw std::runtime_error("no queries with a positive candidate");
  }
  return sum / static_cast<double>(used);
}

}  // namespace

double precision_at_1(std::span<const RankedQuery> queries,
                      const EvalOptions& options) {
  return mean_over_queries(queries, options, [](const RankedQuery& query) {
    const auto order = rank_order(query);
    return query.candidates[order.front()].label == 1 ? 1.0 : 0.0;
  });
}

double mean_reciprocal_rank(std::span<const RankedQuery> queries,
                            const EvalOptions& options) {
  return mean_over_queries(queries, options, [](const RankedQuery& query) {
    const auto order = rank_order(query);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      if (query.candidates[order[rank]].label == 1) {
        return 1.0 / static_cast<double>(rank + 1);
      }
    }
    return 0.0;  // unreachable: a positive is guaranteed
  });
}

double mean_average_precision(std::span<const RankedQuery> queries,
                              const EvalOptions& options) {
  return mean_over_queries(queries, options, [](const RankedQuery& query) {
    const auto order = rank_order(query);
    double ap = 0.0;
    std::size_t positives_seen = 0;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      if (query.candidates[order[rank]].label == 1) {
        ++positives_seen;
        ap += static_cast<double>(positives_seen) /
              static_cast<double>(rank + 1);
      }
    }
    return ap / static_cast<double>(positives_seen);
  });
}

BinaryMetrics binary_f1(std::span<const std::pair<double, int>> scored,
                        double threshold) {
  if (scored.empty()) throw std::runtime_error("no scored pairs");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::runtime_error("threshold must be within (0,1)");
  }
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (const auto& [score, label] : scored) {
    if (!std::isfinite(score)) throw std::runtime_error("non-finite score");
    const bool predicted = score >= threshold;
    if (predicted && label == 1) ++tp;
    if (predicted && label != 1) ++fp;
    if (!predicted && label == 1) ++fn;
  }
  BinaryMetrics m;
  m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

std::vector<ScoreRecord> load_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scores: " + path.string());
  std::vector<ScoreRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": invalid JSON: " + e.what());
    }
    if (!obj.is_object() || !obj.contains("qid") || !obj["qid"].is_string() ||
        !obj.contains("cid") || !obj["cid"].is_string() ||
        !obj.contains("score") || !obj["score"].is_number()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected {qid, cid, score}");
    }
    records.push_back({obj["qid"].get<std::string>(),
                       obj["cid"].get<std::string>(),
                       obj["score"].get<double>()});
  }
  return records;
}

std::vector<RankedQuery> join_scores(const Dataset& dataset,
                                     std::span<const ScoreRecord> scores) {
  std::unordered_map<std::string, double> by_key;
  for (const auto& rec : scores) {
    const auto key = rec.qid + '\t' + rec.cid;
    if (!by_key.emplace(key, rec.score).second) {
      throw std::runtime_error("duplicate score for (qid=" + rec.qid +
                               ", cid=" + rec.cid + ")");
    }
  }

  std::vector<RankedQuery> queries;
  std::unordered_map<std::string, std::size_t> query_index;
  std::vector<std::string> missing;
  std::size_t missing_total = 0;
  for (const auto& pair : dataset.pairs) {
    if (!pair.label.has_value()) {
      throw std::runtime_error("unlabeled pair (qid=" + pair.qid +
                               ", cid=" + pair.cid + ")");
    }
    const auto it = by_key.find(pair.qid + '\t' + pair.cid);
    if (it == by_key.end()) {
      ++missing_total;
      if (missing.size() < 5) missing.push_back(pair.qid + "/" + pair.cid);
      continue;
    }
    auto [qit, inserted] = query_index.try_emplace(pair.qid, queries.size());
    if (inserted) queries.push_back(RankedQuery{pair.qid, {}});
    queries[qit->second].candidates.push_back(
        {pair.cid, it->second, *pair.label});
  }
  if (missing_total > 0) {
    std::string msg =
        "missing scores for " + std::to_string(missing_total) + " pair(s):";
    for (const auto& key : missing) msg += ' ' + key;
    if (missing_total > missing.size()) msg += " ...";
    throw std::runtime_error(msg);
  }
  return queries;
}

std::string format_metric(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  std::string s(buf);
  if (s.size() >= 2 && s[0] == '0' && s[1] == '.') s.erase(0, 1);
  return s;
}

}  // namespace kbaug
