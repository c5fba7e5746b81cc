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

#include "mteval/diagnostics.hpp"

#include <set>
#include <unordered_map>

#include "mteval/error.hpp"

namespace mteval {

std::string SelfMismatchStats::quadruple() const {
  return std::to_string(system_mismatches) + "/" +
         std::to_string(reference_mismatches) + "/" +
         std::to_string(duplicated_sources) + "/" +
         std::to_string(total_segments);
}

long exact_match(const std::vector<std::string>& system,
                 const std::vector<std::string>& reference) {
  if (system.size() != reference.size()) {
    throw InputError("exact_match: unaligned inputs (" +
                     std::to_string(system.size()) + " vs " +
                     std::to_string(reference.size()) + ")");
  }
  long count = 0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system[i] == reference[i]) ++count;
  }
  return count;
}

SelfMismatchCounts self_mismatch(const std::vector<std::string>& sources,
                                 const std::vector<std::string>& translations) {
  if (sources.size() != translations.size()) {
    throw InputError("self_mismatch: unaligned inputs");
  }
  std::unordered_map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    groups[sources[i]].push_back(i);
  }
  SelfMismatchCounts counts;
  for (const auto& [source, positions] : groups) {
    if (positions.size() < 2) continue;
    counts.duplicated_sources += static_cast<long>(positions.size());
    std::set<std::string> variants;
    for (const std::size_t i : positions) variants.insert(translations[i]);
    counts.variant_mismatches += static_cast<long>(variants.size()) - 1;
    if (variants.size() > 1) {
      // A position mismatches when some sibling translates the same source
      // differently; with >1 variant, a position agrees with all siblings
      // only if every occurrence is identical, which is impossible here,
      // unless its variant covers all positions.
      std::unordered_map<std::string, long> variant_counts;
      for (const std::size_t i : positions) ++variant_counts[translations[i]];
      for (const std::size_t i : positions) {
        if (variant_counts[translations[i]] <
            static_cast<long>(positions.size())) {
          ++counts.position_mismatches;
        }
      }
    }
  }
  return counts;
}

std::vector<DiagnosticsRecord> diagnostics_table(
    const EvaluationCorpus& corpus) {
  if (corpus.references.empty()) {
    throw InputError("diagnostics_table: corpus has no reference");
  }
  const std::vector<std::string>& reference = corpus.references[0];
  const SelfMismatchCounts ref_counts =
      self_mismatch(corpus.sources, reference);

  std::vector<DiagnosticsRecord> records;
  records.reserve(corpus.systems.size());
  for (const SystemEntry& sys : corpus.systems) {
    const SelfMismatchCounts sys_counts =
        self_mismatch(corpus.sources, sys.segments);
    DiagnosticsRecord record;
    record.system_id = sys.system_id;
    record.exact_match = exact_match(sys.segments, reference);
    record.self_mismatch.system_mismatches = sys_counts.position_mismatches;
    record.self_mismatch.reference_mismatches = ref_counts.position_mismatches;
    record.self_mismatch.duplicated_sources = sys_counts.duplicated_sources;
    record.self_mismatch.total_segments =
        static_cast<long>(corpus.segment_count());
    record.system_variant_mismatches = sys_counts.variant_mismatches;
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace mteval
