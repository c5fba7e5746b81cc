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

#ifndef MTEVAL_EXTERNAL_SCORES_HPP_
#define MTEVAL_EXTERNAL_SCORES_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/metrics.hpp"

namespace mteval {

// Segment-level scores of an external learned metric, one value per
// (system, segment).  Values are stored exactly as ingested; the x100
// display convention is applied only when reporting corpus averages.
class SegmentScoreTable {
 public:
  SegmentScoreTable(std::string model_id, std::vector<std::string> system_ids,
                    std::size_t n_segments);

  const std::string& model_id() const { return model_id_; }
  std::size_t n_segments() const { return n_segments_; }
  const std::vector<std::string>& system_ids() const { return system_ids_; }

  bool has_system(std::string_view system_id) const;
  double score(std::string_view system_id, std::size_t segment) const;
  const std::vector<double>& system_scores(std::string_view system_id) const;

  void set_score(std::string_view system_id, std::size_t segment, double value);

 private:
  std::string model_id_;
  std::vector<std::string> system_ids_;
  std::size_t n_segments_;
  std::vector<std::vector<double>> scores_;  // [system][segment]
};

// TSV rows `system_id<TAB>segment_index<TAB>score`; lines starting with
// '#' are ignored.  Every (system, segment) pair of the corpus must be
// covered exactly once.
SegmentScoreTable load_segment_scores(const std::filesystem::path& path,
                                      const EvaluationCorpus& corpus,
                                      std::string model_id = "");

// Canonical serialization, rows sorted by (system, segment); loading the
// output reproduces the table.
void write_segment_scores(const std::filesystem::path& path,
                          const SegmentScoreTable& table);

// Mean segment score scaled by 100, per the reporting convention for
// learned metrics.  Signature is the model id.
MetricScore corpus_average(const SegmentScoreTable& table,
                           std::string_view system_id);

// U(candidate, pseudo_reference) per segment, for MBR with an external
// utility.  Complete over ordered pairs of distinct candidates; diagonal
// entries are accepted and ignored.
class PairwiseUtilityTable {
 public:
  PairwiseUtilityTable(std::vector<std::string> system_ids,
                       std::size_t n_segments);

  std::size_t n_segments() const { return n_segments_; }
  std::size_t n_candidates() const { return system_ids_.size(); }
  const std::vector<std::string>& system_ids() const { return system_ids_; }

  double utility(std::size_t segment, std::size_t candidate,
                 std::size_t pseudo_reference) const;
  void set_utility(std::size_t segment, std::size_t candidate,
                   std::size_t pseudo_reference, double value);

 private:
  std::vector<std::string> system_ids_;
  std::size_t n_segments_;
  std::vector<double> utilities_;
};

// TSV rows `segment_index<TAB>candidate_system<TAB>pseudo_reference_system
// <TAB>utility`, '#' comments allowed.
PairwiseUtilityTable load_pairwise_utilities(const std::filesystem::path& path,
                                             const EvaluationCorpus& corpus);

}  // namespace mteval

#endif  // MTEVAL_EXTERNAL_SCORES_HPP_
