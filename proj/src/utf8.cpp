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

#include "mteval/utf8.hpp"

#include <stdexcept>

namespace mteval {

namespace {

// Decodes one codepoint at `pos`; returns false on malformed input.
// `pos` advances past the sequence on success.
bool decode_one(std::string_view s, std::size_t* pos, char32_t* cp) {
  const unsigned char b0 = static_cast<unsigned char>(s[*pos]);
  if (b0 < 0x80) {
    *cp = b0;
    ++*pos;
    return true;
  }
  int len;
  char32_t value;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    value = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    value = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    value = b0 & 0x07;
  } else {
    return false;
  }
  if (*pos + len > s.size()) return false;
  for (int i = 1; i < len; ++i) {
    const unsigned char b = static_cast<unsigned char>(s[*pos + i]);
    if ((b & 0xC0) != 0x80) return false;
    value = (value << 6) | (b & 0x3F);
  }
  // Overlong encodings and invalid scalar values.
  if (len == 2 && value < 0x80) return false;
  if (len == 3 && value < 0x800) return false;
  if (len == 4 && value < 0x10000) return false;
  if (value > 0x10FFFF) return false;
  if (value >= 0xD800 && value <= 0xDFFF) return false;
  *cp = value;
  *pos += len;
  return true;
}

}  // namespace

bool validate_utf8(std::string_view bytes, std::size_t* bad_offset) {
  std::size_t pos = 0;
  char32_t cp;
  while (pos < bytes.size()) {
    const std::size_t start = pos;
    if (!decode_one(bytes, &pos, &cp)) {
      if (bad_offset != nullptr) *bad_offset = start;
      return false;
    }
  }
  return true;
}

std::vector<char32_t> utf8_codepoints(std::string_view bytes) {
  std::vector<char32_t> out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  char32_t cp;
  while (pos < bytes.size()) {
    if (!decode_one(bytes, &pos, &cp)) {
      throw std::invalid_argument("utf8_codepoints: malformed UTF-8 at byte " +
                                  std::to_string(pos));
    }
    out.push_back(cp);
  }
  return out;
}

void append_utf8(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string codepoints_to_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(cp, &out);
  return out;
}

}  // namespace mteval
