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

#include "kbaug/serializer.hpp"

#include <stdexcept>

#include "kbaug/normalize.hpp"

namespace kbaug {

Placement parse_placement(std::string_view name) {
  if (name == "append") return Placement::append;
  if (name == "prepend") return Placement::prepend;
  throw std::runtime_error("unknown placement '" + std::string(name) +
                           "' (expected 'append' or 'prepend')");
}

std::string_view placement_name(Placement placement) {
  return placement == Placement::append ? "append" : "prepend";
}

std::vector<std::string> render_context(const ContextSelection& selection) {
  std::vector<std::string> contexts;
  auto add_side = [&](const std::vector<TaggedSpan>& picks) {
    for (const auto& pick : picks) {
      const auto& collection = pick.entry->collection;
      if (collection.has_value() && !collection->empty()) {
        contexts.push_back(lowercase(*collection));
      }
    }
  };
  add_side(selection.question_picks);
  add_side(selection.answer_picks);
  return contexts;
}

AugmentedExample build_sequence(std::string_view question,
                                std::string_view answer,
                                std::vector<std::string> contexts,
                                Placement placement, std::string_view sep_token,
                                std::size_t max_tokens) {
  if (sep_token.empty()) throw std::runtime_error("separator token is empty");
  if (max_tokens < 8) throw std::runtime_error("max_tokens must be >= 8");

  auto question_toks = whitespace_tokens(lowercase(question));
  auto answer_toks = whitespace_tokens(lowercase(answer));
  if (question_toks.empty()) throw std::runtime_error("question is empty");
  if (answer_toks.empty()) throw std::runtime_error("answer is empty");

  const std::string sep(sep_token);
  std::vector<std::vector<std::string>> context_toks;
  std::size_t context_token_count = 0;
  for (const auto& ctx : contexts) {
    auto toks = whitespace_tokens(lowercase(ctx));
    context_token_count += toks.size();
    context_toks.push_back(std::move(toks));
  }

  // Append carries one separator between question and answer plus one per
  // context; prepend additionally leads with a separator. No context means
  // the bare baseline with its single inner separator either way.
  std::size_t n_separators = 1 + context_toks.size();
  if (placement == Placement::prepend && !context_toks.empty()) {
    ++n_separators;
  }
  const std::size_t fixed =
      question_toks.size() + context_token_count + n_separators;
  const std::size_t total = fixed + answer_toks.size();

  AugmentedExample out;
  out.placement = placement;
  out.contexts = std::move(contexts);
  if (total > max_tokens) {
    if (fixed + 1 > max_tokens) {
      throw std::runtime_error(
          "question and context alone exceed the token budget of " +
          std::to_string(max_tokens));
    }
    answer_toks.resize(max_tokens - fixed);
    out.truncated = true;
  }

  std::vector<std::string> seq;
  seq.reserve(fixed + answer_toks.size());
  auto push_part = [&](const std::vector<std::string>& toks) {
    for (const auto& t : toks) seq.push_back(t);
  };
  if (placement == Placement::prepend) {
    for (const auto& ctx : context_toks) {
      seq.push_back(sep);
      push_part(ctx);
    }
    seq.push_back(sep);
    push_part(question_toks);
    seq.push_back(sep);
    push_part(answer_toks);
    if (context_toks.empty()) {
      // No context: the leading separator collapses away and the sequence
      // is the bare baseline.
      seq.erase(seq.begin());
    }
  } else {
    push_part(question_toks);
    seq.push_back(sep);
    push_part(answer_toks);
    for (const auto& ctx : context_toks) {
      seq.push_back(sep);
      push_part(ctx);
    }
  }

  std::string joined;
  for (const auto& t : seq) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  out.sequence = std::move(joined);
  return out;
}

}  // namespace kbaug
