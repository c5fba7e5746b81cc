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

#ifndef MTEVAL_METRICS_HPP_
#define MTEVAL_METRICS_HPP_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/tokenize.hpp"

namespace mteval {

enum class BleuSmoothing { kNone, kExp };

enum class WordTokenizer {
  k13a,
  kZh,
  // Character-level CJK splitting used in place of a morphological
  // Japanese tokenizer; the signature reports "char-cjk", never a
  // dictionary-based scheme this harness does not implement.
  kCharCjk,
};

struct BleuOptions {
  BleuSmoothing smoothing = BleuSmoothing::kExp;
  bool effective_order = false;  // corpus convention; segment scoring opts in
  bool lowercase = false;
  WordTokenizer tokenizer = WordTokenizer::k13a;  // recorded in the signature
};

struct ChrfOptions {
  int char_order = 6;
  double beta = 2.0;
  bool remove_whitespace = true;
  bool lowercase = false;
};

// Additive sufficient statistics: corpus BLEU is a function of the
// segment-wise sums.  ref_len accumulates the closest reference length per
// segment (ties resolved to the shorter reference).
struct BleuStatistics {
  std::array<long, 4> matches{};
  std::array<long, 4> totals{};
  long hyp_len = 0;
  long ref_len = 0;

  BleuStatistics& operator+=(const BleuStatistics& other);
};

struct ChrfStatistics {
  struct Order {
    long hyp = 0;
    long ref = 0;
    long match = 0;
  };
  std::vector<Order> orders;  // orders[n-1] holds order-n counts

  ChrfStatistics() = default;
  explicit ChrfStatistics(int char_order) : orders(char_order) {}

  ChrfStatistics& operator+=(const ChrfStatistics& other);
};

struct MetricScore {
  double value = 0.0;  // 0..100 for BLEU/chrF
  std::vector<double> per_segment;
  std::string signature;
};

// --- statistics extraction -------------------------------------------------

BleuStatistics bleu_segment_stats(const TokenSequence& hyp,
                                  const std::vector<TokenSequence>& refs);

// Statistics of the reference maximizing this segment's chrF (first wins
// ties), so corpus aggregation sums one reference choice per segment.
ChrfStatistics chrf_segment_stats(const std::string& hyp,
                                  const std::vector<std::string>& refs,
                                  const ChrfOptions& options = {});

double bleu_score_from_stats(const BleuStatistics& stats,
                             BleuSmoothing smoothing, bool effective_order);
double chrf_score_from_stats(const ChrfStatistics& stats, double beta);

// --- scoring ---------------------------------------------------------------

// refs[i] lists the reference token sequences of segment i.
MetricScore bleu_corpus(const std::vector<TokenSequence>& hyps,
                        const std::vector<std::vector<TokenSequence>>& refs,
                        const BleuOptions& options = {});

MetricScore chrf_corpus(const std::vector<std::string>& hyps,
                        const std::vector<std::vector<std::string>>& refs,
                        const ChrfOptions& options = {});

// Segment BLEU always smooths (exp) and uses effective orders; a -inf
// score is useless for combination and diagnostics.
double bleu_segment(const TokenSequence& hyp,
                    const std::vector<TokenSequence>& refs);

double chrf_segment(const std::string& hyp,
                    const std::vector<std::string>& refs,
                    const ChrfOptions& options = {});

// Precomputed n-gram profiles for repeated pairwise segment chrF, the MBR
// hot path (every ordered candidate pair per segment).  chrf_pair equals
// chrf_segment(hyp_text, {ref_text}) exactly.
class ChrfTextProfile {
 public:
  ChrfTextProfile(const std::string& text, const ChrfOptions& options = {});

 private:
  friend double chrf_pair(const ChrfTextProfile& hyp,
                          const ChrfTextProfile& ref, double beta);
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

double chrf_pair(const ChrfTextProfile& hyp, const ChrfTextProfile& ref,
                 double beta = 2.0);

// --- signatures ------------------------------------------------------------

std::string tokenizer_name(WordTokenizer tokenizer);
WordTokenizer tokenizer_for_target(std::string_view target_language);
TokenSequence run_tokenizer(WordTokenizer tokenizer, const std::string& text);

std::string bleu_signature(int nrefs, const BleuOptions& options);
std::string chrf_signature(int nrefs, const ChrfOptions& options);

// Inverses of the renderers above; used to assert that signatures
// round-trip.  Throw InputError on unparseable input.
BleuOptions parse_bleu_signature(std::string_view signature, int* nrefs);
ChrfOptions parse_chrf_signature(std::string_view signature, int* nrefs);

// --- corpus-level convenience ----------------------------------------------

// Tokenizes per the corpus target language (unless options pin a
// tokenizer), scores one system against all references, fills signature
// and per-segment values.
MetricScore score_bleu_system(const EvaluationCorpus& corpus,
                              std::string_view system_id,
                              std::optional<BleuOptions> options = {});
MetricScore score_chrf_system(const EvaluationCorpus& corpus,
                              std::string_view system_id,
                              std::optional<ChrfOptions> options = {});

// BLEU options implied by the corpus direction (tokenizer per target).
BleuOptions default_bleu_options(const EvaluationCorpus& corpus);

}  // namespace mteval

#endif  // MTEVAL_METRICS_HPP_
