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

#ifndef MTEVAL_NORMALIZE_HPP_
#define MTEVAL_NORMALIZE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/external_scores.hpp"

namespace mteval {

enum class NormalizeStage {
  kUnicodePunct,   // unicode punctuation to ASCII equivalents
  kPunctNorm,      // language-aware punctuation/spacing cleanup
  kStripNonPrint,  // category-C codepoints to spaces
};

struct NormalizationConfig {
  // Affects quote placement and digit grouping in the kPunctNorm stage.
  std::string target_language = "en";
  std::vector<NormalizeStage> stages = {NormalizeStage::kUnicodePunct,
                                        NormalizeStage::kPunctNorm,
                                        NormalizeStage::kStripNonPrint};
};

// Ports of the Moses scripts the stages are named after
// (replace-unicode-punctuation.perl, normalize-punctuation.perl,
// remove-non-printing-char.perl); tests hold the pipeline byte-identical
// to the transcribed scripts run under perl.
std::string replace_unicode_punctuation(const std::string& line);
std::string normalize_punctuation(const std::string& line,
                                  const std::string& language);
std::string remove_non_printing(const std::string& line);

// Applies the configured stages in order to one line (no newline).
std::string normalize_text(const std::string& line,
                           const NormalizationConfig& config);

std::vector<std::string> normalize_lines(const std::vector<std::string>& lines,
                                         const NormalizationConfig& config);

// The stage scripts predate CJK targets; callers should warn rather than
// change behavior.
bool normalization_unreliable_for(const std::string& target_language);

struct ScorePair {
  double pre = 0.0;
  double post = 0.0;
};

// Scores one system before and after normalizing its output (references
// stay untouched).  Always reports BLEU and chrF; adds the ingested
// metric when both pre- and post-normalization score tables are given.
std::vector<std::pair<std::string, ScorePair>> normalization_impact(
    const EvaluationCorpus& corpus, std::string_view system_id,
    const NormalizationConfig& config,
    const SegmentScoreTable* ingested_pre = nullptr,
    const SegmentScoreTable* ingested_post = nullptr);

}  // namespace mteval

#endif  // MTEVAL_NORMALIZE_HPP_
