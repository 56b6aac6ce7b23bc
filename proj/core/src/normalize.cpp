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

#include "kbaug/normalize.hpp"

#include <cstdint>

namespace kbaug {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

// Minimal UTF-8 decoder. Malformed bytes are passed through as single
// opaque code units so that arbitrary input never throws here.
Decoded decode_utf8(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  auto at = [&](std::size_t k) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    return {static_cast<char32_t>((b0 & 0x1F) << 6) | at(1), 2};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    return {static_cast<char32_t>((b0 & 0x0F) << 12) | (at(1) << 6) | at(2), 3};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    return {static_cast<char32_t>((b0 & 0x07) << 18) | (at(1) << 12) |
                (at(2) << 6) | at(3),
            4};
  }
  return {b0, 1};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_space_cp(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\v':
    case U'\f':
    case 0x00A0:  // no-break space
    case 0x200B:  // zero width space
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Compatibility fold for punctuation that commonly appears in web text.
// Fullwidth forms map onto their ASCII counterparts.
char32_t fold_cp(char32_t cp) {
  switch (cp) {
    case 0x2018:
    case 0x2019:
    case 0x201A:
    case 0x2032:
      return U'\'';
    case 0x201C:
    case 0x201D:
    case 0x201E:
    case 0x2033:
      return U'"';
    case 0x2010:
    case 0x2011:
    case 0x2012:
    case 0x2013:
    case 0x2014:
    case 0x2015:
    case 0x2212:
      return U'-';
    case 0x2026:
      return U'.';  // ellipsis collapses to a stripped boundary char
    default:
      break;
  }
  if (cp >= 0xFF01 && cp <= 0xFF5E) return cp - 0xFEE0;
  return cp;
}

char32_t lower_cp(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  // Latin-1 supplement, excluding the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'!' && cp <= U'/') || (cp >= U':' && cp <= U'@') ||
           (cp >= U'[' && cp <= U'`') || (cp >= U'{' && cp <= U'~');
  }
  switch (cp) {
    case 0x00A1:  // inverted exclamation
    case 0x00AB:  // guillemets
    case 0x00BB:
    case 0x00BF:  // inverted question mark
      return true;
    default:
      return false;
  }
}

struct NormChar {
  char32_t cp;
  std::size_t raw_begin;
  std::size_t raw_end;
};

void flush_word(std::vector<NormChar>& word, std::vector<RawToken>& out) {
  if (word.empty()) return;
  std::size_t lo = 0;
  std::size_t hi = word.size();
  while (lo < hi && is_punct_cp(word[lo].cp)) ++lo;
  while (hi > lo && is_punct_cp(word[hi - 1].cp)) --hi;
  if (lo < hi) {
    RawToken tok;
    tok.raw_begin = word[lo].raw_begin;
    tok.raw_end = word[hi - 1].raw_end;
    // Possessive suffix: drop a trailing apostrophe-s.
    if (hi - lo >= 3 && word[hi - 1].cp == U's' && word[hi - 2].cp == U'\'') {
      hi -= 2;
    }
    for (std::size_t k = lo; k < hi; ++k) append_utf8(tok.text, word[k].cp);
    if (!tok.text.empty()) out.push_back(std::move(tok));
  }
  word.clear();
}

}  // namespace

std::vector<RawToken> normalize_with_offsets(std::string_view text) {
  std::vector<RawToken> out;
  std::vector<NormChar> word;
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = decode_utf8(text, i);
    if (is_space_cp(d.cp)) {
      flush_word(word, out);
    } else {
      word.push_back({lower_cp(fold_cp(d.cp)), i, i + d.len});
    }
    i += d.len;
  }
  flush_word(word, out);
  return out;
}

std::vector<std::string> normalize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& tok : normalize_with_offsets(text)) {
    out.push_back(std::move(tok.text));
  }
  return out;
}

std::string lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = decode_utf8(text, i);
    append_utf8(out, lower_cp(d.cp));
    i += d.len;
  }
  return out;
}

std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = decode_utf8(text, i);
    if (is_space_cp(d.cp)) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.append(text.substr(i, d.len));
    }
    i += d.len;
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace kbaug
