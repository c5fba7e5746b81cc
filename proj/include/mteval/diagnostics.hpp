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

#ifndef MTEVAL_DIAGNOSTICS_HPP_
#define MTEVAL_DIAGNOSTICS_HPP_

#include <string>
#include <vector>

#include "mteval/corpus.hpp"

namespace mteval {

// Counts of duplicated-source behavior, rendered "a/b/c/d": positions the
// system translated differently / positions the reference translated
// differently / duplicated source positions / total segments.
struct SelfMismatchStats {
  long system_mismatches = 0;
  long reference_mismatches = 0;
  long duplicated_sources = 0;
  long total_segments = 0;

  std::string quadruple() const;
};

// Segments identical (byte-equal) to the corresponding reference segment.
long exact_match(const std::vector<std::string>& system,
                 const std::vector<std::string>& reference);

struct SelfMismatchCounts {
  // Positions whose source occurs elsewhere and whose translation differs
  // from at least one sibling occurrence.
  long position_mismatches = 0;
  // Alternative reading, kept for comparison: sum over duplicate groups of
  // (distinct translations - 1).
  long variant_mismatches = 0;
  long duplicated_sources = 0;
};

SelfMismatchCounts self_mismatch(const std::vector<std::string>& sources,
                                 const std::vector<std::string>& translations);

struct DiagnosticsRecord {
  std::string system_id;
  long exact_match = 0;
  SelfMismatchStats self_mismatch;
  long system_variant_mismatches = 0;  // optional secondary count
};

// One record per system; reference_mismatches comes from running
// self_mismatch on the first reference itself.  exact_match compares
// against the first reference.
std::vector<DiagnosticsRecord> diagnostics_table(const EvaluationCorpus& corpus);

}  // namespace mteval

#endif  // MTEVAL_DIAGNOSTICS_HPP_
