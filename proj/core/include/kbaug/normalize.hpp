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

#ifndef KBAUG_NORMALIZE_HPP_
#define KBAUG_NORMALIZE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kbaug {

// A normalized token together with the byte range of the original text it
// was produced from. The range covers the word after boundary punctuation
// has been stripped but before the "'s" suffix is removed, so the surface
// slice of a possessive still reads as written.
struct RawToken {
  std::string text;
  std::size_t raw_begin = 0;
  std::size_t raw_end = 0;
};

// Canonical tokenization used for every label and every input text:
// compatibility-fold common Unicode punctuation (curly quotes, dashes,
// fullwidth forms), lowercase (ASCII and Latin-1), strip punctuation at
// token boundaries, strip a trailing "'s", split on whitespace, drop
// empty tokens. Deterministic; empty input yields an empty list.
std::vector<std::string> normalize(std::string_view text);

// Same pipeline, keeping raw byte offsets for surface extraction.
std::vector<RawToken> normalize_with_offsets(std::string_view text);

// Case folding alone (no punctuation handling). Used when serializing
// training sequences, where punctuation must survive verbatim.
std::string lowercase(std::string_view text);

// Plain whitespace split with no other transformation.
std::vector<std::string> whitespace_tokens(std::string_view text);

}  // namespace kbaug

#endif  // KBAUG_NORMALIZE_HPP_
