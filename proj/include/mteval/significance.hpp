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

#ifndef MTEVAL_SIGNIFICANCE_HPP_
#define MTEVAL_SIGNIFICANCE_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/external_scores.hpp"
#include "mteval/metrics.hpp"

namespace mteval {

// Segment index multisets drawn with replacement.  Fully determined by
// (seed, n_resamples, corpus_size): resample i draws corpus_size indices
// from its own SplitMix64 stream, seeded by one avalanche round over
// (seed + golden_ratio * (i + 1)); values map to [0, corpus_size) by the
// 128-bit multiply-shift reduction.
struct ResamplePlan {
  std::uint64_t seed = 0;
  int n_resamples = 1000;
  std::size_t corpus_size = 0;
  std::vector<std::vector<std::uint32_t>> index_sets;
};

ResamplePlan make_plan(std::uint64_t seed, int n_resamples,
                       std::size_t corpus_size);

// A corpus metric that can be re-evaluated on segment multisets.  BLEU and
// chrF re-aggregate per-segment sufficient statistics; ingested metrics
// average per-segment scores.  Implementations precompute per-segment
// state for every system of one corpus, so subset scoring is cheap.
class CorpusMetric {
 public:
  virtual ~CorpusMetric() = default;

  virtual std::string name() const = 0;
  virtual std::string signature() const = 0;
  virtual std::vector<std::string> system_ids() const = 0;
  virtual std::size_t corpus_size() const = 0;

  virtual double score_full(std::string_view system_id) const = 0;
  // Score over the segment multiset `indices`; a segment drawn twice
  // contributes twice.
  virtual double score_subset(std::string_view system_id,
                              std::span<const std::uint32_t> indices) const = 0;
};

std::unique_ptr<CorpusMetric> make_bleu_metric(const EvaluationCorpus& corpus,
                                               const BleuOptions& options);
std::unique_ptr<CorpusMetric> make_chrf_metric(const EvaluationCorpus& corpus,
                                               const ChrfOptions& options);
std::unique_ptr<CorpusMetric> make_ingested_metric(
    const EvaluationCorpus& corpus, const SegmentScoreTable& table);

struct PairResult {
  std::string system_a;
  std::string system_b;
  double delta = 0.0;    // full-corpus score_a - score_b
  double p_value = 1.0;  // fraction of resamples the better system fails to win
  bool significant = false;
};

// Paired bootstrap: both systems are scored on the same resampled
// multisets; p = (#resamples where the full-corpus-better system does not
// strictly win) / n.  Ties count as failures.
PairResult paired_bootstrap(const CorpusMetric& metric,
                            std::string_view system_a,
                            std::string_view system_b,
                            const ResamplePlan& plan, double alpha = 0.05);

struct SignificanceMatrix {
  std::string metric_name;
  std::string signature;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int n_resamples = 0;
  std::vector<std::string> systems;  // descending full-corpus score
  std::vector<double> scores;        // aligned with `systems`
  std::vector<PairResult> pairs;     // upper triangle, row-major
};

// All unordered pairs under one shared plan.  `threads` splits the
// (system, resample) scoring grid; the result is bit-identical for any
// worker count.
SignificanceMatrix significance_matrix(const CorpusMetric& metric,
                                       const ResamplePlan& plan,
                                       double alpha = 0.05, int threads = 1);

}  // namespace mteval

#endif  // MTEVAL_SIGNIFICANCE_HPP_
