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

#ifndef KBAUG_TAGGER_HPP_
#define KBAUG_TAGGER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbaug/kb.hpp"

namespace kbaug {

// A resolved entity mention: token range [start, end) in the normalized
// token stream, the owning KB entry, how the winning label matched, and
// the original text slice underneath the range.
struct TaggedSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  const KbEntry* entry = nullptr;
  MatchKind kind = MatchKind::exact;
  std::string surface;
};

struct TaggedText {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<TaggedSpan> spans;  // non-overlapping, sorted by start
};

struct TaggedPair {
  TaggedText question;
  TaggedText answer;
  std::optional<int> label;  // 1 = correct answer, 0 = incorrect
  std::string qid;
  std::string cid;
};

// Greedy left-to-right tagging: at each position pool the results of the
// exact, contained and quorum queries (quorum omitted at the last token),
// keep the top-ranked match if any, emit a span of its length and advance
// past it; otherwise advance by one. Consecutive spans resolving to the
// same entry are then joined.
TaggedText tag_text(const LabelIndex& index, std::string_view raw);

// Collapses maximal runs of adjacent spans (end == next.start) that share
// a kb_id into one span; the merged kind is the highest-priority kind of
// the run. Input must be sorted and non-overlapping.
std::vector<TaggedSpan> merge_adjacent(std::vector<TaggedSpan> spans);

TaggedPair tag_pair(const LabelIndex& index, std::string_view question,
                    std::string_view answer, std::optional<int> label,
                    std::string qid, std::string cid);

}  // namespace kbaug

#endif  // KBAUG_TAGGER_HPP_
