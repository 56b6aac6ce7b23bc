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

#ifndef KBAUG_METRICS_HPP_
#define KBAUG_METRICS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kbaug/dataset.hpp"

namespace kbaug {

struct RankedCandidate {
  std::string cid;
  double score = 0.0;
  int label = 0;
};

// One question with its scored candidates. Candidates are ranked by
// descending score; score ties break by cid ascending, which keeps every
// metric deterministic across runs.
struct RankedQuery {
  std::string qid;
  std::vector<RankedCandidate> candidates;
};

struct EvalOptions {
  // Queries with no positive candidate are an error unless this is set,
  // in which case they are excluded from the mean.
  bool allow_no_positive = false;
};

// Fraction of queries whose top-ranked candidate is positive.
double precision_at_1(std::span<const RankedQuery> queries,
                      const EvalOptions& options = {});

// Mean over queries of 1 / rank of the first positive.
double mean_reciprocal_rank(std::span<const RankedQuery> queries,
                            const EvalOptions& options = {});

// Mean over queries of the average of precision@k at each positive rank k.
double mean_average_precision(std::span<const RankedQuery> queries,
                              const EvalOptions& options = {});

struct BinaryMetrics {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Positive-class F1 at prediction = score >= threshold, threshold in
// (0,1). F1 is 0 when precision + recall is 0. Empty input is an error.
BinaryMetrics binary_f1(std::span<const std::pair<double, int>> scored,
                        double threshold = 0.5);

// Score file: JSONL of {qid, cid, score}.
struct ScoreRecord {
  std::string qid;
  std::string cid;
  double score = 0.0;
};

std::vector<ScoreRecord> load_scores(const std::filesystem::path& path);

// Joins scores onto the dataset's labels by (qid, cid) and groups
// candidates per question in dataset order. Every pair must receive a
// score; the first few missing keys are listed on failure.
std::vector<RankedQuery> join_scores(const Dataset& dataset,
                                     std::span<const ScoreRecord> scores);

// Three decimals without the leading zero, matching the reported style:
// 0.847 renders as ".847".
std::string format_metric(double value);

}  // namespace kbaug

#endif  // KBAUG_METRICS_HPP_
