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

#ifndef MTEVAL_ERROR_HPP_
#define MTEVAL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mteval {

// Invalid user input: bad manifest, mismatched files, malformed score
// tables, unknown system ids.  The CLI maps this to exit code 2; anything
// else escaping to main is an internal error (exit code 1).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mteval

#endif  // MTEVAL_ERROR_HPP_
