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

#ifndef KBAUG_SERIALIZER_HPP_
#define KBAUG_SERIALIZER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbaug/context_filter.hpp"

namespace kbaug {

enum class Placement { append, prepend };

Placement parse_placement(std::string_view name);
std::string_view placement_name(Placement placement);

// Final training sequence for one pair. With contexts present:
//   append:  question SEP answer SEP ctx1 SEP ctx2 ...
//   prepend: SEP ctx1 SEP ctx2 SEP question SEP answer
// With no contexts both placements reduce to the bare "question SEP
// answer" baseline, so omitting context reproduces the un-augmented
// input format exactly.
struct AugmentedExample {
  std::string qid;
  std::string cid;
  std::string sequence;
  Placement placement = Placement::append;
  std::vector<std::string> contexts;
  std::optional<int> label;
  bool truncated = false;
};

// One context string per picked span: the entry's collection value,
// lowercased, question picks first then answer picks, each side in text
// order. Picks whose entry has no collection are dropped.
std::vector<std::string> render_context(const ContextSelection& selection);

// Builds the sequence, lowercased and whitespace-tokenized, joined by
// single spaces. If the token count exceeds max_tokens, tokens are
// removed from the end of the answer only (never from the question or
// the context) and the result is flagged as truncated. The answer keeps
// at least one token; a budget too small even for that is an error, as
// are an empty question or answer, an empty separator, or max_tokens < 8.
AugmentedExample build_sequence(std::string_view question,
                                std::string_view answer,
                                std::vector<std::string> contexts,
                                Placement placement, std::string_view sep_token,
                                std::size_t max_tokens);

}  // namespace kbaug

#endif  // KBAUG_SERIALIZER_HPP_
