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

#include "kbaug/kb.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "kbaug/normalize.hpp"

namespace kbaug {

int match_priority(MatchKind kind) {
  switch (kind) {
    case MatchKind::exact:
      return 0;
    case MatchKind::quorum:
      return 1;
    case MatchKind::contained:
      return 2;
  }
  return 3;
}

std::string_view match_kind_name(MatchKind kind) {
  switch (kind) {
    case MatchKind::exact:
      return "exact";
    case MatchKind::contained:
      return "contained";
    case MatchKind::quorum:
      return "quorum";
  }
  return "unknown";
}

bool match_ranks_before(const LabelMatch& a, const LabelMatch& b) {
  const int pa = match_priority(a.kind);
  const int pb = match_priority(b.kind);
  if (pa != pb) return pa < pb;
  if (a.entry->popularity != b.entry->popularity) {
    return a.entry->popularity > b.entry->popularity;
  }
  if (a.label_token_count != b.label_token_count) {
    return a.label_token_count < b.label_token_count;
  }
  if (a.entry->kb_id != b.entry->kb_id) return a.entry->kb_id < b.entry->kb_id;
  return a.matched_label < b.matched_label;
}

std::optional<LabelMatch> rank_matches(const std::vector<LabelMatch>& matches) {
  if (matches.empty()) return std::nullopt;
  const LabelMatch* best = &matches.front();
  for (const auto& m : matches) {
    if (match_ranks_before(m, *best)) best = &m;
  }
  return *best;
}

LabelIndex LabelIndex::build(std::vector<KbEntry> entries) {
  if (entries.empty()) throw std::runtime_error("empty KB");

  std::unordered_set<std::string_view> seen_ids;
  for (const auto& entry : entries) {
    if (entry.kb_id.empty()) throw std::runtime_error("entry with empty kb_id");
    if (!seen_ids.insert(entry.kb_id).second) {
      throw std::runtime_error("duplicate kb_id: " + entry.kb_id);
    }
    if (entry.popularity < 0.0 || entry.popularity > 1.0) {
      throw std::runtime_error("popularity out of [0,1] for kb_id: " +
                               entry.kb_id);
    }
  }

  LabelIndex index;
  index.entries_.reserve(entries.size());
  for (auto& entry : entries) {
    std::vector<LabelRecord> records;
    std::unordered_set<std::string> seen_labels;
    auto add_label = [&](const std::string& raw_label) {
      auto tokens = normalize(raw_label);
      if (tokens.empty()) return;
      std::string text;
      for (const auto& t : tokens) {
        if (!text.empty()) text += ' ';
        text += t;
      }
      if (!seen_labels.insert(text).second) return;
      LabelRecord rec;
      rec.text = std::move(text);
      rec.tokens = std::move(tokens);
      records.push_back(std::move(rec));
    };
    add_label(entry.canonical_label);
    for (const auto& alias : entry.aliases) add_label(alias);

    if (records.empty()) {
      ++index.skipped_entries_;
      continue;
    }
    const auto entry_index = static_cast<std::uint32_t>(index.entries_.size());
    index.entries_.push_back(std::move(entry));
    for (auto& rec : records) {
      rec.entry_index = entry_index;
      const auto label_id = static_cast<std::uint32_t>(index.labels_.size());
      for (const auto& tok : rec.tokens) {
        auto& posting = index.token_to_labels_[tok];
        if (posting.empty() || posting.back() != label_id) {
          posting.push_back(label_id);
        }
      }
      index.labels_.push_back(std::move(rec));
    }
  }
  return index;
}

LabelMatch LabelIndex::make_match(const LabelRecord& rec, MatchKind kind) const {
  LabelMatch m;
  m.entry = &entries_[rec.entry_index];
  m.matched_label = rec.text;
  m.kind = kind;
  m.span_len = kind == MatchKind::quorum ? 2 : 1;
  m.label_token_count = static_cast<int>(rec.tokens.size());
  return m;
}

const std::vector<std::uint32_t>* LabelIndex::postings(
    std::string_view token) const {
  auto it = token_to_labels_.find(std::string(token));
  return it == token_to_labels_.end() ? nullptr : &it->second;
}

namespace {

// Query results are sorted canonically so that the output is a pure
// function of the KB contents, independent of dump order.
void sort_matches(std::vector<LabelMatch>& matches) {
  std::sort(matches.begin(), matches.end(),
            [](const LabelMatch& a, const LabelMatch& b) {
              if (a.entry->kb_id != b.entry->kb_id) {
                return a.entry->kb_id < b.entry->kb_id;
              }
              return a.matched_label < b.matched_label;
            });
}

}  // namespace

std::vector<LabelMatch> LabelIndex::query_exact(std::string_view token) const {
  std::vector<LabelMatch> out;
  if (const auto* posting = postings(token)) {
    for (auto label_id : *posting) {
      const auto& rec = labels_[label_id];
      if (rec.tokens.size() == 1) out.push_back(make_match(rec, MatchKind::exact));
    }
  }
  sort_matches(out);
  return out;
}

std::vector<LabelMatch> LabelIndex::query_contained(
    std::string_view token) const {
  std::vector<LabelMatch> out;
  if (const auto* posting = postings(token)) {
    for (auto label_id : *posting) {
      const auto& rec = labels_[label_id];
      if (rec.tokens.size() >= 2) {
        out.push_back(make_match(rec, MatchKind::contained));
      }
    }
  }
  sort_matches(out);
  return out;
}

std::vector<LabelMatch> LabelIndex::query_quorum(
    std::string_view token, std::string_view next_token) const {
  std::vector<LabelMatch> out;
  const auto* first = postings(token);
  const auto* second = postings(next_token);
  if (first && second) {
    // Posting lists are sorted by construction.
    std::vector<std::uint32_t> hits;
    std::set_intersection(first->begin(), first->end(), second->begin(),
                          second->end(), std::back_inserter(hits));
    for (auto label_id : hits) {
      out.push_back(make_match(labels_[label_id], MatchKind::quorum));
    }
  }
  sort_matches(out);
  return out;
}

std::vector<KbEntry> load_kb_dump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open KB dump: " + path.string());
  }
  std::vector<KbEntry> entries;
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
    auto fail = [&](const std::string& msg) -> std::runtime_error {
      return std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                ": " + msg);
    };
    if (!obj.is_object()) throw fail("expected a JSON object");
    KbEntry entry;
    if (!obj.contains("kb_id") || !obj["kb_id"].is_string()) {
      throw fail("missing string field 'kb_id'");
    }
    entry.kb_id = obj["kb_id"].get<std::string>();
    if (entry.kb_id.empty()) throw fail("empty kb_id");
    if (!obj.contains("label") || !obj["label"].is_string()) {
      throw fail("missing string field 'label'");
    }
    entry.canonical_label = obj["label"].get<std::string>();
    if (obj.contains("aliases")) {
      if (!obj["aliases"].is_array()) throw fail("'aliases' must be an array");
      for (const auto& a : obj["aliases"]) {
        if (!a.is_string()) throw fail("'aliases' must contain strings");
        entry.aliases.push_back(a.get<std::string>());
      }
    }
    if (obj.contains("popularity")) {
      if (!obj["popularity"].is_number()) {
        throw fail("'popularity' must be a number");
      }
      entry.popularity = obj["popularity"].get<double>();
      if (entry.popularity < 0.0 || entry.popularity > 1.0) {
        throw fail("'popularity' must be within [0,1]");
      }
    }
    if (obj.contains("collection") && !obj["collection"].is_null()) {
      if (!obj["collection"].is_string()) {
        throw fail("'collection' must be a string or null");
      }
      entry.collection = obj["collection"].get<std::string>();
    }
    if (obj.contains("relations")) {
      if (!obj["relations"].is_array()) {
        throw fail("'relations' must be an array");
      }
      for (const auto& r : obj["relations"]) {
        if (!r.is_string()) throw fail("'relations' must contain strings");
        entry.relations.push_back(r.get<std::string>());
      }
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace kbaug
