// Copyright 2026 mteval authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mteval/tokenize.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "mteval/utf8.hpp"

namespace mteval {

namespace {

// Codepoint ranges isolated by the CJK tokenizer: the CJK Unified
// Ideographs blocks (+ extensions and compatibility ideographs), CJK
// radicals/strokes, Kangxi radicals, Bopomofo, CJK punctuation,
// vertical/compatibility forms and the full-width block.
constexpr std::array<std::pair<char32_t, char32_t>, 17> kCjkRanges = {{
    {0x2E80, 0x2EFF},    // CJK radicals supplement
    {0x2F00, 0x2FDF},    // Kangxi radicals
    {0x2FF0, 0x2FFF},    // ideographic description characters
    {0x3000, 0x303F},    // CJK symbols and punctuation
    {0x3100, 0x312B},    // Bopomofo
    {0x31A0, 0x31B7},    // Bopomofo extended
    {0x31C0, 0x31EF},    // CJK strokes
    {0x3400, 0x4DB5},    // CJK unified ideographs extension A
    {0x4E00, 0x9FBB},    // CJK unified ideographs
    {0xF900, 0xFA2D},    // CJK compatibility ideographs
    {0xFA30, 0xFA6A},    // CJK compatibility ideographs
    {0xFA70, 0xFAD9},    // CJK compatibility ideographs
    {0xFE10, 0xFE19},    // vertical forms
    {0xFE30, 0xFE4F},    // CJK compatibility forms
    {0xFF00, 0xFFEF},    // full-width forms
    {0x20000, 0x2A6D6},  // CJK unified ideographs extension B
    {0x2F800, 0x2FA1D},  // CJK compatibility ideographs supplement
}};

void replace_all(std::string* s, std::string_view from, std::string_view to) {
  std::string out;
  out.reserve(s->size());
  std::size_t pos = 0;
  while (pos < s->size()) {
    if (s->compare(pos, from.size(), from) == 0) {
      out.append(to);
      pos += from.size();
    } else {
      out.push_back((*s)[pos]);
      ++pos;
    }
  }
  *s = std::move(out);
}

bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

// ASCII punctuation split off unconditionally by the 13a rules:
// space..'&', '('..'+', '/', ':'..'@', '['..'`', '{'..'~'.
// Apostrophe, comma, period, hyphen and digits are excluded here; the
// period/comma and digit-dash rules below handle them.
bool is_split_punct(char32_t c) {
  return (c >= 0x20 && c <= 0x26) || (c >= 0x28 && c <= 0x2B) || c == 0x2F ||
         (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

using CpString = std::vector<char32_t>;

CpString split_punct_pass(const CpString& in) {
  CpString out;
  out.reserve(in.size() * 2);
  for (char32_t c : in) {
    if (is_split_punct(c)) {
      out.push_back(U' ');
      out.push_back(c);
      out.push_back(U' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// "X." / "X," with non-digit X: insert spaces around the punctuation.
// Matches are consumed left to right, both characters at once.
CpString period_comma_after_nondigit(const CpString& in) {
  CpString out;
  out.reserve(in.size() + 8);
  std::size_t i = 0;
  while (i < in.size()) {
    if (i + 1 < in.size() && !is_ascii_digit(in[i]) &&
        (in[i + 1] == U'.' || in[i + 1] == U',')) {
      out.push_back(in[i]);
      out.push_back(U' ');
      out.push_back(in[i + 1]);
      out.push_back(U' ');
      i += 2;
    } else {
      out.push_back(in[i]);
      ++i;
    }
  }
  return out;
}

// ".X" / ",X" with non-digit X.
CpString period_comma_before_nondigit(const CpString& in) {
  CpString out;
  out.reserve(in.size() + 8);
  std::size_t i = 0;
  while (i < in.size()) {
    if (i + 1 < in.size() && (in[i] == U'.' || in[i] == U',') &&
        !is_ascii_digit(in[i + 1])) {
      out.push_back(U' ');
      out.push_back(in[i]);
      out.push_back(U' ');
      out.push_back(in[i + 1]);
      i += 2;
    } else {
      out.push_back(in[i]);
      ++i;
    }
  }
  return out;
}

CpString dash_after_digit(const CpString& in) {
  CpString out;
  out.reserve(in.size() + 8);
  std::size_t i = 0;
  while (i < in.size()) {
    if (i + 1 < in.size() && is_ascii_digit(in[i]) && in[i + 1] == U'-') {
      out.push_back(in[i]);
      out.push_back(U' ');
      out.push_back(U'-');
      out.push_back(U' ');
      i += 2;
    } else {
      out.push_back(in[i]);
      ++i;
    }
  }
  return out;
}

TokenSequence split_on_whitespace(const CpString& in) {
  TokenSequence tokens;
  std::string current;
  for (char32_t c : in) {
    if (is_unicode_whitespace(c)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      append_utf8(c, &current);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

CpString preprocess_and_pad(const std::string& text) {
  std::string s = text;
  replace_all(&s, "<skipped>", "");
  replace_all(&s, "-\n", "");
  replace_all(&s, "\n", " ");
  if (s.find('&') != std::string::npos) {
    replace_all(&s, "&quot;", "\"");
    replace_all(&s, "&amp;", "&");
    replace_all(&s, "&lt;", "<");
    replace_all(&s, "&gt;", ">");
  }
  CpString cps;
  cps.push_back(U' ');
  for (char32_t c : utf8_codepoints(s)) cps.push_back(c);
  cps.push_back(U' ');
  return cps;
}

TokenSequence run_split_rules(CpString cps) {
  cps = split_punct_pass(cps);
  cps = period_comma_after_nondigit(cps);
  cps = period_comma_before_nondigit(cps);
  cps = dash_after_digit(cps);
  return split_on_whitespace(cps);
}

}  // namespace

bool is_cjk_codepoint(char32_t cp) {
  for (const auto& [lo, hi] : kCjkRanges) {
    if (cp >= lo && cp <= hi) return true;
  }
  return false;
}

bool is_unicode_whitespace(char32_t cp) {
  switch (cp) {
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return (cp >= 0x09 && cp <= 0x0D) || (cp >= 0x1C && cp <= 0x1F) ||
             (cp >= 0x2000 && cp <= 0x200A);
  }
}

TokenSequence tokenize_13a(const std::string& text) {
  return run_split_rules(preprocess_and_pad(text));
}

TokenSequence tokenize_zh(const std::string& text) {
  CpString padded = preprocess_and_pad(text);
  CpString isolated;
  isolated.reserve(padded.size() * 2);
  for (char32_t c : padded) {
    if (is_cjk_codepoint(c)) {
      isolated.push_back(U' ');
      isolated.push_back(c);
      isolated.push_back(U' ');
    } else {
      isolated.push_back(c);
    }
  }
  return run_split_rules(std::move(isolated));
}

long CharNgramProfile::total() const {
  long sum = 0;
  for (const auto& [key, count] : counts) sum += count;
  return sum;
}

CharNgramProfile char_ngrams(const std::string& text, int order,
                             bool remove_space) {
  CharNgramProfile profile;
  profile.order = order;
  if (order < 1) return profile;
  std::vector<char32_t> cps;
  for (char32_t c : utf8_codepoints(text)) {
    if (remove_space && is_unicode_whitespace(c)) continue;
    cps.push_back(c);
  }
  if (static_cast<long>(cps.size()) < order) return profile;
  for (std::size_t i = 0; i + order <= cps.size(); ++i) {
    std::string key;
    for (int k = 0; k < order; ++k) append_utf8(cps[i + k], &key);
    ++profile.counts[key];
  }
  return profile;
}

}  // namespace mteval
