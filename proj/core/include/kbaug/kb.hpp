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

#ifndef KBAUG_KB_HPP_
#define KBAUG_KB_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kbaug {

// One knowledge-base item as read from a dump: an opaque id, a canonical
// label plus aliases, a popularity prior in [0,1], an optional coarse
// category ("collection") and the names of its relations.
struct KbEntry {
  std::string kb_id;
  std::string canonical_label;
  std::vector<std::string> aliases;
  double popularity = 0.0;
  std::optional<std::string> collection;
  std::vector<std::string> relations;
};

enum class MatchKind { exact, contained, quorum };

// Relevance priority of a match kind; lower is better.
// exact beats quorum beats contained.
int match_priority(MatchKind kind);
std::string_view match_kind_name(MatchKind kind);

// A label hit for one query: which entry owns the label, the normalized
// label text that matched, how it matched, and how many input tokens the
// match consumes (1 for exact/contained, 2 for quorum).
struct LabelMatch {
  const KbEntry* entry = nullptr;
  std::string matched_label;
  MatchKind kind = MatchKind::exact;
  int span_len = 1;
  int label_token_count = 1;
};

// Strict "a ranks before b" under the total relevance order:
// kind priority, then higher popularity, then fewer label tokens, then
// smaller kb_id, then smaller matched label. The final key makes the
// order total even when one entry matches through two labels of equal
// length.
bool match_ranks_before(const LabelMatch& a, const LabelMatch& b);

// Best match under the relevance order; empty input yields nothing.
// Permutation-invariant in the input order.
std::optional<LabelMatch> rank_matches(const std::vector<LabelMatch>& matches);

// Immutable inverted index over every normalized label (canonical and
// aliases) of a KB dump. Safe to share across threads once built.
class LabelIndex {
 public:
  LabelIndex(const LabelIndex&) = delete;
  LabelIndex& operator=(const LabelIndex&) = delete;
  LabelIndex(LabelIndex&&) = default;
  LabelIndex& operator=(LabelIndex&&) = default;

  // Builds the index, taking ownership of the entries. Throws on an empty
  // entry list or a duplicate kb_id. Entries whose every label normalizes
  // to nothing are skipped and counted as warnings.
  static LabelIndex build(std::vector<KbEntry> entries);

  // Single-token labels equal to the (already normalized) token.
  std::vector<LabelMatch> query_exact(std::string_view token) const;

  // Multi-token labels having the token as one of their tokens.
  std::vector<LabelMatch> query_contained(std::string_view token) const;

  // Labels whose token set contains both tokens of the bigram,
  // order-insensitive.
  std::vector<LabelMatch> query_quorum(std::string_view token,
                                       std::string_view next_token) const;

  std::size_t entry_count() const { return entries_.size(); }
  std::size_t label_count() const { return labels_.size(); }
  std::size_t skipped_entry_count() const { return skipped_entries_; }
  const std::vector<KbEntry>& entries() const { return entries_; }

 private:
  LabelIndex() = default;

  struct LabelRecord {
    std::string text;  // normalized, space-joined
    std::vector<std::string> tokens;
    std::uint32_t entry_index = 0;
  };

  LabelMatch make_match(const LabelRecord& rec, MatchKind kind) const;
  const std::vector<std::uint32_t>* postings(std::string_view token) const;

  std::vector<KbEntry> entries_;
  std::vector<LabelRecord> labels_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> token_to_labels_;
  std::size_t skipped_entries_ = 0;
};

// Reads a KB dump: one JSON object per line with fields kb_id (string),
// label (string), aliases (array of strings), popularity (number),
// collection (string or null), relations (array of strings). Unknown
// fields are ignored. Throws with a line number on malformed input.
std::vector<KbEntry> load_kb_dump(const std::filesystem::path& path);

}  // namespace kbaug

#endif  // KBAUG_KB_HPP_
