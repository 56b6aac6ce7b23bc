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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kbaug/attention.hpp"
#include "kbaug/context_filter.hpp"
#include "kbaug/dataset.hpp"
#include "kbaug/kb.hpp"
#include "kbaug/metrics.hpp"
#include "kbaug/serializer.hpp"

namespace {

using namespace kbaug;

LabelIndex build_index_from(const std::string& kb_path) {
  return LabelIndex::build(load_kb_dump(kb_path));
}

Dataset load_tagged(const std::string& kb_path, const std::string& dataset_path,
                    const std::string& format) {
  const auto index = build_index_from(kb_path);
  auto dataset = load_dataset(dataset_path, parse_format(format));
  tag_dataset(index, dataset);
  return dataset;
}

int cmd_index_build(const std::string& kb_path) {
  const auto index = build_index_from(kb_path);
  std::cout << index.entry_count() << " entries, " << index.label_count()
            << " labels\n";
  if (index.skipped_entry_count() > 0) {
    std::cerr << "warning: skipped " << index.skipped_entry_count()
              << " entries whose labels normalize to nothing\n";
  }
  return 0;
}

int cmd_augment(const std::string& kb_path, const std::string& dataset_path,
                const std::string& format, const std::string& filter,
                const std::string& placement, const std::string& sep_token,
                std::size_t max_tokens, const std::string& out_path) {
  const auto index = build_index_from(kb_path);
  auto dataset = load_dataset(dataset_path, parse_format(format));
  tag_dataset(index, dataset);

  const auto filter_kind = parse_filter(filter);
  const auto selections = select_contexts(dataset, filter_kind);
  SerializeOptions options;
  options.placement = parse_placement(placement);
  options.sep_token = sep_token;
  options.max_tokens = max_tokens;
  const auto count = write_augmented(dataset, selections, options, out_path);
  const double coverage = compute_filter_coverage(dataset, filter_kind);
  std::cout << count << " records written, coverage " << format_pct(coverage)
            << " (" << filter_name(filter_kind) << ")\n";
  return 0;
}

int cmd_stats(const std::string& kb_path, const std::string& dataset_path,
              const std::string& format) {
  const auto dataset = load_tagged(kb_path, dataset_path, format);
  const auto stats = compute_split_stats(dataset);
  std::string title = dataset.name;
  if (!dataset.split.empty()) title += " (" + dataset.split + ")";
  std::printf("%-28s %-12s %-10s %-15s %s\n", "Dataset", "#QA pairs",
              "% w/o KB", "#Correct w/ KB", "#Incorrect w/ KB");
  std::printf("%-28s %-12zu %-10s %-15zu %zu\n", title.c_str(), stats.n_pairs,
              format_pct(stats.pct_without_kb).c_str(), stats.n_correct_with_kb,
              stats.n_incorrect_with_kb);
  return 0;
}

int cmd_eval(const std::string& dataset_path, const std::string& format,
             const std::string& scores_path, const std::string& task,
             double threshold, bool allow_no_positive) {
  const auto dataset = load_dataset(dataset_path, parse_format(format));
  const auto scores = load_scores(scores_path);
  const auto queries = join_scores(dataset, scores);
  EvalOptions options;
  options.allow_no_positive = allow_no_positive;

  if (task == "rank") {
    std::cout << "p@1 " << format_metric(precision_at_1(queries, options))
              << "\n";
    std::cout << "MAP "
              << format_metric(mean_average_precision(queries, options))
              << "\n";
    std::cout << "MRR "
              << format_metric(mean_reciprocal_rank(queries, options)) << "\n";
    return 0;
  }
  if (task == "classify") {
    std::vector<std::pair<double, int>> scored;
    for (const auto& query : queries) {
      for (const auto& c : query.candidates) {
        scored.emplace_back(c.score, c.label);
      }
    }
    const auto binary = binary_f1(scored, threshold);
    std::cout << "F1 " << format_metric(binary.f1) << "\n";
    std::cout << "precision " << format_metric(binary.precision) << "\n";
    std::cout << "recall " << format_metric(binary.recall) << "\n";
    std::cout << "MAP "
              << format_metric(mean_average_precision(queries, options))
              << "\n";
    return 0;
  }
  throw std::runtime_error("unknown task '" + task +
                           "' (expected 'rank' or 'classify')");
}

int cmd_attention(const std::string& dump_path, const std::string& from_kw,
                  const std::string& to_kw, double threshold,
                  const std::string& out_path) {
  const auto record = load_attention_dump(dump_path);
  const auto report = analyze_pair(record, from_kw, to_kw, threshold);
  std::cout << report_table(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write: " + out_path);
    out << report_json(report) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KB-context data augmentation toolkit for answer sentence "
               "selection datasets"};
  app.require_subcommand(1);

  std::string kb_path;
  std::string dataset_path;
  std::string format = "tsv";
  std::string filter = "intersection";
  std::string placement = "append";
  std::string sep_token = "<\\s>";
  std::size_t max_tokens = 256;
  std::string out_path;
  std::string scores_path;
  std::string task = "rank";
  double eval_threshold = 0.5;
  double attention_threshold = 0.1;
  bool allow_no_positive = false;
  std::string dump_path;
  std::string from_kw;
  std::string to_kw;

  auto* index_build = app.add_subcommand(
      "index-build", "Build the label index from a KB dump and report counts");
  index_build->add_option("--kb", kb_path, "KB dump (JSONL)")->required();

  auto* augment = app.add_subcommand(
      "augment", "Tag a dataset, filter context and write augmented JSONL");
  augment->add_option("--kb", kb_path, "KB dump (JSONL)")->required();
  augment->add_option("--dataset", dataset_path, "Dataset file")->required();
  augment->add_option("--format", format, "Dataset format: tsv or jsonl");
  augment->add_option("--filter", filter, "Context filter: intersection or 1best");
  augment->add_option("--placement", placement, "Context placement: append or prepend");
  augment->add_option("--sep-token", sep_token, "Separator token");
  augment->add_option("--max-tokens", max_tokens, "Sequence token budget");
  augment->add_option("--out", out_path, "Output JSONL path")->required();

  auto* stats = app.add_subcommand(
      "stats", "Per-split dataset statistics and KB tag rate");
  stats->add_option("--kb", kb_path, "KB dump (JSONL)")->required();
  stats->add_option("--dataset", dataset_path, "Dataset file")->required();
  stats->add_option("--format", format, "Dataset format: tsv or jsonl");

  auto* eval = app.add_subcommand("eval", "Ranking or classification metrics");
  eval->add_option("--dataset", dataset_path, "Dataset file")->required();
  eval->add_option("--format", format, "Dataset format: tsv or jsonl");
  eval->add_option("--task", task, "rank or classify");
  eval->add_option("--threshold", eval_threshold, "Classification threshold");
  eval->add_flag("--allow-no-positive", allow_no_positive,
                 "Exclude queries without positives instead of failing");
  eval->add_option("scores", scores_path, "Score file (JSONL of {qid, cid, score})")
      ->required();

  auto* attention = app.add_subcommand(
      "attention", "Keyword-pair attention statistics from a weight dump");
  attention->add_option("dump", dump_path, "Attention dump (JSON)")->required();
  attention->add_option("from", from_kw, "From keyword")->required();
  attention->add_option("to", to_kw, "To keyword")->required();
  attention->add_option("--threshold", attention_threshold,
                        "Active-head threshold");
  attention->add_option("--out", out_path, "Write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (index_build->parsed()) return cmd_index_build(kb_path);
    if (augment->parsed()) {
      return cmd_augment(kb_path, dataset_path, format, filter, placement,
                         sep_token, max_tokens, out_path);
    }
    if (stats->parsed()) return cmd_stats(kb_path, dataset_path, format);
    if (eval->parsed()) {
      return cmd_eval(dataset_path, format, scores_path, task,
                      eval_threshold, allow_no_positive);
    }
    if (attention->parsed()) {
      return cmd_attention(dump_path, from_kw, to_kw, attention_threshold,
                           out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "kbaug: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
