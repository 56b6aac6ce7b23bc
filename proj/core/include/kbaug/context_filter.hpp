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

#ifndef KBAUG_CONTEXT_FILTER_HPP_
#define KBAUG_CONTEXT_FILTER_HPP_

#include <string_view>
#include <vector>

#include "kbaug/tagger.hpp"

namespace kbaug {

enum class ContextFilter { intersection, one_best };

// CLI vocabulary: "intersection" and "1best".
ContextFilter parse_filter(std::string_view name);
std::string_view filter_name(ContextFilter filter);

// The spans of a pair that will contribute context, per side, in text
// order. The intersection filter keeps every occurrence of entries tagged
// on both sides; the 1-best filter keeps a single answer-side span.
struct ContextSelection {
  std::vector<TaggedSpan> question_picks;
  std::vector<TaggedSpan> answer_picks;
  ContextFilter filter = ContextFilter::intersection;
};

// Keeps all spans, on each side, whose kb_id is tagged in both the
// question and the answer. Disjoint sides yield an empty selection.
ContextSelection intersection_filter(const TaggedPair& pair);

// Keeps the single answer-side span whose entry has maximal popularity;
// ties break by earliest text position. No question-side picks.
ContextSelection one_best_filter(const TaggedPair& pair);

ContextSelection apply_filter(ContextFilter filter, const TaggedPair& pair);

}  // namespace kbaug

#endif  // KBAUG_CONTEXT_FILTER_HPP_
