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

#include "kbaug/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace kbaug {

namespace {

using ordered_json = nlohmann::ordered_json;

std::runtime_error line_error(const std::filesystem::path& path,
                              std::size_t line_no, const std::string& msg) {
  return std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                            ": " + msg);
}

std::optional<int> parse_label(std::string_view text,
                               const std::filesystem::path& path,
                               std::size_t line_no) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  throw line_error(path, line_no,
                   "invalid label '" + std::string(text) + "' (expected 0 or 1)");
}

struct RawPair {
  std::string qid;
  std::string cid;
  std::string question;
  std::string answer;
  std::optional<int> label;
};

std::vector<RawPair> load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path.string());
  std::vector<RawPair> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 4) {
      throw line_error(path, line_no,
                       "expected 4 tab-separated columns, got " +
                           std::to_string(cols.size()));
    }
    RawPair row;
    row.qid = cols[0];
    row.question = cols[1];
    row.answer = cols[2];
    row.label = parse_label(cols[3], path, line_no);
    if (row.qid.empty()) throw line_error(path, line_no, "empty qid");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RawPair> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path.string());
  std::vector<RawPair> rows;
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
      throw line_error(path, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw line_error(path, line_no, "expected an object");
    RawPair row;
    if (!obj.contains("qid") || !obj["qid"].is_string()) {
      throw line_error(path, line_no, "missing string field 'qid'");
    }
    row.qid = obj["qid"].get<std::string>();
    if (row.qid.empty()) throw line_error(path, line_no, "empty qid");
    if (obj.contains("cid")) {
      if (!obj["cid"].is_string()) {
        throw line_error(path, line_no, "'cid' must be a string");
      }
      row.cid = obj["cid"].get<std::string>();
    }
    if (!obj.contains("question") || !obj["question"].is_string()) {
      throw line_error(path, line_no, "missing string field 'question'");
    }
    row.question = obj["question"].get<std::string>();
    if (obj.contains("answer") && obj["answer"].is_string()) {
      row.answer = obj["answer"].get<std::string>();
    } else if (obj.contains("text") && obj["text"].is_string()) {
      row.answer = obj["text"].get<std::string>();
    } else {
      throw line_error(path, line_no, "missing string field 'answer'");
    }
    if (obj.contains("label") && !obj["label"].is_null()) {
      if (!obj["label"].is_number_integer()) {
        throw line_error(path, line_no, "invalid label (expected 0 or 1)");
      }
      const auto value = obj["label"].get<int>();
      if (value != 0 && value != 1) {
        throw line_error(path, line_no,
                         "invalid label '" + std::to_string(value) +
                             "' (expected 0 or 1)");
      }
      row.label = value;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

DatasetFormat parse_format(std::string_view name) {
  if (name == "tsv") return DatasetFormat::tsv;
  if (name == "jsonl") return DatasetFormat::jsonl;
  throw std::runtime_error("unknown format '" + std::string(name) +
                           "' (expected 'tsv' or 'jsonl')");
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const LoadOptions& options) {
  auto rows = format == DatasetFormat::tsv ? load_tsv(path) : load_jsonl(path);

  // Candidate ids default to the row order within each question.
  std::unordered_map<std::string, std::size_t> next_cid;
  for (auto& row : rows) {
    auto& counter = next_cid[row.qid];
    if (row.cid.empty()) row.cid = std::to_string(counter);
    ++counter;
  }

  std::unordered_set<std::string> keys;
  for (const auto& row : rows) {
    if (!keys.insert(row.qid + '\t' + row.cid).second) {
      throw std::runtime_error(path.string() + ": duplicate (qid, cid): (" +
                               row.qid + ", " + row.cid + ")");
    }
  }

  if (options.clean) {
    std::unordered_set<std::string> has_positive;
    for (const auto& row : rows) {
      if (row.label == 1) has_positive.insert(row.qid);
    }
    std::erase_if(rows, [&](const RawPair& row) {
      return !has_positive.contains(row.qid);
    });
  }

  Dataset out;
  out.name = path.filename().string();
  for (const auto* split : {"train", "dev", "test"}) {
    if (out.name.find(split) != std::string::npos) {
      out.split = split;
      break;
    }
  }
  out.pairs.reserve(rows.size());
  for (auto& row : rows) {
    TaggedPair pair;
    pair.qid = std::move(row.qid);
    pair.cid = std::move(row.cid);
    pair.question.raw = std::move(row.question);
    pair.answer.raw = std::move(row.answer);
    pair.label = row.label;
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

void tag_dataset(const LabelIndex& index, Dataset& dataset) {
  for (auto& pair : dataset.pairs) {
    TaggedPair tagged = tag_pair(index, pair.question.raw, pair.answer.raw,
                                 pair.label, pair.qid, pair.cid);
    pair = std::move(tagged);
  }
  dataset.tagged = true;
}

SplitStats compute_split_stats(const Dataset& dataset) {
  if (!dataset.tagged && !dataset.pairs.empty()) {
    throw std::runtime_error("dataset is not tagged");
  }
  SplitStats stats;
  stats.n_pairs = dataset.pairs.size();
  if (dataset.pairs.empty()) return stats;
  std::size_t without_kb = 0;
  for (const auto& pair : dataset.pairs) {
    if (!pair.label.has_value()) {
      throw std::runtime_error("unlabeled pair (qid=" + pair.qid +
                               ", cid=" + pair.cid + ")");
    }
    const bool with_kb =
        !pair.question.spans.empty() || !pair.answer.spans.empty();
    if (!with_kb) {
      ++without_kb;
    } else if (*pair.label == 1) {
      ++stats.n_correct_with_kb;
    } else {
      ++stats.n_incorrect_with_kb;
    }
  }
  stats.pct_without_kb =
      100.0 * static_cast<double>(without_kb) / static_cast<double>(stats.n_pairs);
  return stats;
}

std::vector<ContextSelection> select_contexts(const Dataset& dataset,
                                              ContextFilter filter) {
  if (!dataset.tagged && !dataset.pairs.empty()) {
    throw std::runtime_error("dataset is not tagged");
  }
  std::vector<ContextSelection> selections;
  selections.reserve(dataset.pairs.size());
  for (const auto& pair : dataset.pairs) {
    selections.push_back(apply_filter(filter, pair));
  }
  return selections;
}

double compute_filter_coverage(const Dataset& dataset, ContextFilter filter) {
  if (dataset.pairs.empty()) return 0.0;
  std::size_t covered = 0;
  for (const auto& selection : select_contexts(dataset, filter)) {
    if (!render_context(selection).empty()) ++covered;
  }
  return 100.0 * static_cast<double>(covered) /
         static_cast<double>(dataset.pairs.size());
}

namespace {

std::string join_comma(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

ordered_json tag_to_json(const TaggedSpan& span) {
  const KbEntry& entry = *span.entry;
  ordered_json tag;
  tag["kb_id"] = entry.kb_id;
  tag["popularity"] = entry.popularity;
  tag["candidate_title"] = entry.canonical_label;
  tag["candidate_aliases"] = join_comma(entry.aliases);
  if (entry.collection.has_value()) {
    tag["collection"] = *entry.collection;
  } else {
    tag["collection"] = nullptr;
  }
  tag["relations"] = join_comma(entry.relations);
  return tag;
}

}  // namespace

std::size_t write_augmented(const Dataset& dataset,
                            std::span<const ContextSelection> selections,
                            const SerializeOptions& options,
                            const std::filesystem::path& path) {
  if (!dataset.tagged && !dataset.pairs.empty()) {
    throw std::runtime_error("dataset is not tagged");
  }
  if (selections.size() != dataset.pairs.size()) {
    throw std::runtime_error("selection count does not match pair count");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path.string());

  std::size_t count = 0;
  for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
    const auto& pair = dataset.pairs[i];
    AugmentedExample example;
    try {
      example = build_sequence(pair.question.raw, pair.answer.raw,
                               render_context(selections[i]), options.placement,
                               options.sep_token, options.max_tokens);
    } catch (const std::exception& e) {
      throw std::runtime_error("pair (qid=" + pair.qid + ", cid=" + pair.cid +
                               "): " + e.what());
    }
    ordered_json record;
    record["qid"] = pair.qid;
    record["cid"] = pair.cid;
    record["question"] = pair.question.raw;
    record["text"] = pair.answer.raw;
    if (pair.label.has_value()) {
      record["label"] = *pair.label;
    } else {
      record["label"] = nullptr;
    }
    ordered_json tags = ordered_json::array();
    for (const auto& span : pair.answer.spans) tags.push_back(tag_to_json(span));
    record["kb_tags"] = std::move(tags);
    record["sequence"] = example.sequence;
    out << record.dump() << '\n';
    ++count;
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
  return count;
}

std::string format_pct(double pct) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", pct);
  std::string s(buf);
  if (s.size() >= 2 && s[0] == '0' && s[1] == '.') s.erase(0, 1);
  return s + "%";
}

}  // namespace kbaug
