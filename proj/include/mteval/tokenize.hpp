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

#ifndef MTEVAL_TOKENIZE_HPP_
#define MTEVAL_TOKENIZE_HPP_

#include <string>
#include <unordered_map>
#include <vector>

namespace mteval {

using TokenSequence = std::vector<std::string>;

// mteval-v13a word tokenization: HTML entity unescaping, then ASCII
// punctuation is split off while '.' and ',' between digits stay attached.
TokenSequence tokenize_13a(const std::string& text);

// CJK-aware tokenization: every CJK codepoint becomes a token of its own,
// the remaining spans are split with the 13a rules.  Equal to tokenize_13a
// on input without CJK codepoints.
TokenSequence tokenize_zh(const std::string& text);

// True for codepoints the CJK tokenizer isolates (see kCjkRanges table).
bool is_cjk_codepoint(char32_t cp);

// True for the whitespace codepoints removed before character n-gram
// extraction (ASCII whitespace, NBSP, the Unicode space blocks).
bool is_unicode_whitespace(char32_t cp);

struct CharNgramProfile {
  int order = 1;
  // Key: UTF-8 encoding of exactly `order` consecutive codepoints.
  std::unordered_map<std::string, long> counts;

  long total() const;
};

// Character n-grams of `text`.  With remove_space, all whitespace
// codepoints are dropped before extraction, so n-grams cross former word
// boundaries.  Text shorter than `order` yields an empty profile.
CharNgramProfile char_ngrams(const std::string& text, int order,
                             bool remove_space = true);

}  // namespace mteval

#endif  // MTEVAL_TOKENIZE_HPP_
