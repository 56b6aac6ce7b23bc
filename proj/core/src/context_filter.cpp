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

#include "kbaug/context_filter.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

namespace kbaug {

ContextFilter parse_filter(std::string_view name) {
  if (name == "intersection") return ContextFilter::intersection;
  if (name == "1best") return ContextFilter::one_best;
  throw std::runtime_error("unknown filter '" + std::string(name) +
                           "' (expected 'intersection' or '1best')");
}

std::string_view filter_name(ContextFilter filter) {
  return filter == ContextFilter::intersection ? "intersection" : "1best";
}

ContextSelection intersection_filter(const TaggedPair& pair) {
  ContextSelection sel;
  sel.filter = ContextFilter::intersection;
  std::unordered_set<std::string_view> question_ids;
  std::unordered_set<std::string_view> answer_ids;
  for (const auto& span : pair.question.spans) {
    question_ids.insert(span.entry->kb_id);
  }
  for (const auto& span : pair.answer.spans) {
    answer_ids.insert(span.entry->kb_id);
  }
  for (const auto& span : pair.question.spans) {
    if (answer_ids.contains(span.entry->kb_id)) sel.question_picks.push_back(span);
  }
  for (const auto& span : pair.answer.spans) {
    if (question_ids.contains(span.entry->kb_id)) sel.answer_picks.push_back(span);
  }
  return sel;
}

ContextSelection one_best_filter(const TaggedPair& pair) {
  ContextSelection sel;
  sel.filter = ContextFilter::one_best;
  const TaggedSpan* best = nullptr;
  for (const auto& span : pair.answer.spans) {
    if (best == nullptr || span.entry->popularity > best->entry->popularity) {
      best = &span;
    }
  }
  if (best != nullptr) sel.answer_picks.push_back(*best);
  return sel;
}

ContextSelection apply_filter(ContextFilter filter, const TaggedPair& pair) {
  return filter == ContextFilter::intersection ? intersection_filter(pair)
                                               : one_best_filter(pair);
}

}  // namespace kbaug
