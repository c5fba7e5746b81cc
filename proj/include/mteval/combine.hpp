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

#ifndef MTEVAL_COMBINE_HPP_
#define MTEVAL_COMBINE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/external_scores.hpp"

namespace mteval {

// Per-segment candidate translations pooled from all systems, in manifest
// order.  Duplicates stay distinct pool members.
struct CandidatePool {
  std::vector<std::string> system_ids;
  std::vector<std::vector<std::string>> candidates;  // [segment][candidate]

  std::size_t n_segments() const { return candidates.size(); }
  std::size_t n_candidates() const { return system_ids.size(); }
};

CandidatePool pool_from_corpus(const EvaluationCorpus& corpus);

struct CombinationOutput {
  std::string method;      // "mbr" or "oracle"
  std::string utility_id;  // e.g. "chrf" or an external model id
  std::vector<std::size_t> selected_index;   // candidate index per segment
  std::vector<std::string> selected_system;  // system id per segment
  std::vector<std::string> selected_text;    // one line per segment
};

// U(candidate, pseudo_reference) for one segment; both arguments are
// candidate indices.
using SegmentUtilityFn =
    std::function<double(std::size_t segment, std::size_t candidate,
                         std::size_t pseudo_reference)>;

// MBR selection: per segment, pick the candidate maximizing the average
// utility against the other candidates as pseudo-references (self
// excluded).  A single-candidate pool selects that candidate with utility
// 0.  Ties break to the lowest candidate index.
CombinationOutput mbr_select(const CandidatePool& pool,
                             const SegmentUtilityFn& utility,
                             const std::string& utility_id, int threads = 1);

CombinationOutput mbr_select(const CandidatePool& pool,
                             const PairwiseUtilityTable& utilities);

// Built-in utility: segment chrF of the candidate against the
// pseudo-reference (nc:6, beta:2).
CombinationOutput mbr_select_chrf(const CandidatePool& pool, int threads = 1);

using SegmentScoreFn =
    std::function<double(std::size_t segment, std::size_t candidate)>;

// Oracle selection: per segment, pick the candidate with the best
// reference-based score.  Ties break to the lowest candidate index.
CombinationOutput oracle_select(const CandidatePool& pool,
                                const SegmentScoreFn& score,
                                const std::string& score_id);

CombinationOutput oracle_select(const CandidatePool& pool,
                                const SegmentScoreTable& scores);

// Built-in oracle score: segment chrF against the corpus references.
CombinationOutput oracle_select_chrf(const EvaluationCorpus& corpus,
                                     int threads = 1);

// Baseline / MBR / Oracle rows; columns follow the report convention
// (ingested metric first when present, then chrF, then BLEU).  Baseline is
// the best single system per metric.  Cells are empty when a metric
// cannot be computed (e.g. no score table supplied).
struct CombinationEvaluation {
  std::vector<std::string> metric_names;
  std::vector<std::string> metric_signatures;
  struct Row {
    std::string label;
    std::vector<std::optional<double>> values;
  };
  std::vector<Row> rows;
  std::vector<std::string> notes;
};

CombinationEvaluation evaluate_combination(
    const EvaluationCorpus& corpus, const CombinationOutput* mbr,
    const CombinationOutput* oracle,
    const SegmentScoreTable* ingested = nullptr);

// Writes the selected lines as a system file plus `<path>.provenance.json`
// with per-segment winning systems.
void write_combination(const CombinationOutput& output,
                       const std::filesystem::path& path);

}  // namespace mteval

#endif  // MTEVAL_COMBINE_HPP_
