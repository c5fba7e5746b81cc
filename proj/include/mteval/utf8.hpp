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

#ifndef MTEVAL_UTF8_HPP_
#define MTEVAL_UTF8_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mteval {

// Strict UTF-8 validation (rejects overlongs, surrogates, > U+10FFFF).
// On failure returns false and sets *bad_offset to the first offending byte.
bool validate_utf8(std::string_view bytes, std::size_t* bad_offset = nullptr);

// Decodes valid UTF-8 into codepoints.  Input must already be validated;
// malformed sequences trigger std::invalid_argument.
std::vector<char32_t> utf8_codepoints(std::string_view bytes);

// Appends one codepoint to `out` as UTF-8.
void append_utf8(char32_t cp, std::string* out);

std::string codepoints_to_utf8(const std::vector<char32_t>& cps);

}  // namespace mteval

#endif  // MTEVAL_UTF8_HPP_
