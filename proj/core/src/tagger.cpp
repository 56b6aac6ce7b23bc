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

#include "kbaug/tagger.hpp"

#include <utility>

#include "kbaug/normalize.hpp"

namespace kbaug {

TaggedText tag_text(const LabelIndex& index, std::string_view raw) {
  TaggedText out;
  out.raw = std::string(raw);
  const auto toks = normalize_with_offsets(raw);
  out.tokens.reserve(toks.size());
  for (const auto& t : toks) out.tokens.push_back(t.text);

  std::vector<TaggedSpan> spans;
  std::size_t i = 0;
  while (i < toks.size()) {
    std::vector<LabelMatch> pool = index.query_exact(out.tokens[i]);
    auto contained = index.query_contained(out.tokens[i]);
    pool.insert(pool.end(), std::make_move_iterator(contained.begin()),
                std::make_move_iterator(contained.end()));
    if (i + 1 < toks.size()) {
      auto quorum = index.query_quorum(out.tokens[i], out.tokens[i + 1]);
      pool.insert(pool.end(), std::make_move_iterator(quorum.begin()),
                  std::make_move_iterator(quorum.end()));
    }
    const auto winner = rank_matches(pool);
    if (!winner) {
      ++i;
      continue;
    }
    const std::size_t end = i + static_cast<std::size_t>(winner->span_len);
    TaggedSpan span;
    span.start = i;
    span.end = end;
    span.entry = winner->entry;
    span.kind = winner->kind;
    span.surface = std::string(raw.substr(
        toks[i].raw_begin, toks[end - 1].raw_end - toks[i].raw_begin));
    spans.push_back(std::move(span));
    i = end;
  }
  out.spans = merge_adjacent(std::move(spans));
  return out;
}

std::vector<TaggedSpan> merge_adjacent(std::vector<TaggedSpan> spans) {
  std::vector<TaggedSpan> out;
  out.reserve(spans.size());
  for (auto& span : spans) {
    if (!out.empty() && out.back().end == span.start &&
        out.back().entry->kb_id == span.entry->kb_id) {
      out.back().end = span.end;
      if (match_priority(span.kind) < match_priority(out.back().kind)) {
        out.back().kind = span.kind;
      }
      out.back().surface += ' ';
      out.back().surface += span.surface;
    } else {
      out.push_back(std::move(span));
    }
  }
  return out;
}

TaggedPair tag_pair(const LabelIndex& index, std::string_view question,
                    std::string_view answer, std::optional<int> label,
                    std::string qid, std::string cid) {
  TaggedPair pair;
  pair.question = tag_text(index, question);
  pair.answer = tag_text(index, answer);
  pair.label = label;
  pair.qid = std::move(qid);
  pair.cid = std::move(cid);
  return pair;
}

}  // namespace kbaug
