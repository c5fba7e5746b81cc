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

#ifndef MTEVAL_REPORT_HPP_
#define MTEVAL_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mteval/combine.hpp"
#include "mteval/diagnostics.hpp"
#include "mteval/external_scores.hpp"
#include "mteval/normalize.hpp"
#include "mteval/significance.hpp"

namespace mteval {

enum class ReportFormat { kMarkdown, kLatex, kCsv, kJson };

// Accepts "md", "tex", "csv", "json"; throws InputError otherwise.
ReportFormat parse_format(std::string_view name);

// Scores rounded half away from zero to one decimal, e.g. "75.0".
std::string format_score(double value);
// Shortest round-trip representation, for CSV/JSON payloads.
std::string format_full(double value);

struct RankingRow {
  std::string system_id;
  std::optional<int> rank;  // empty renders as "n/a"
  double score = 0.0;
  bool constrained = false;
};

// Sorts by score descending (stable: input order breaks exact ties) and
// numbers the constrained systems 1..k; unconstrained rows get no rank.
std::vector<RankingRow> make_ranking(const std::vector<std::string>& system_ids,
                                     const std::vector<double>& scores,
                                     const std::vector<bool>& constrained);

std::string render_ranking(const std::vector<RankingRow>& rows,
                           const std::string& metric_name,
                           const std::string& signature, ReportFormat format);

// Shade buckets, darker for lower p: level 0 for p >= 0.5, then one level
// per threshold 0.25, 0.1, 0.05, 0.01, 0.005, 0.001 (upper-closed), level
// 7 below 0.001.
int shade_level(double p_value);

std::string render_significance(const SignificanceMatrix& matrix,
                                ReportFormat format);

std::string render_combination(const CombinationEvaluation& evaluation,
                               ReportFormat format);

struct ModelComparison {
  std::vector<std::string> model_ids;
  struct Row {
    std::string system_id;
    std::vector<double> scores;  // corpus averages, x100 convention
    std::vector<int> ranks;      // 1-based rank under each model
  };
  std::vector<Row> rows;  // ordered by the first model's ranking
};

ModelComparison make_model_comparison(
    const EvaluationCorpus& corpus,
    const std::vector<SegmentScoreTable>& tables);

std::string render_model_comparison(const ModelComparison& comparison,
                                    ReportFormat format);

// Sentence matching table: exact-match counts, "a/b/c/d" self-mismatch
// quadruples and "pre/post" normalization score pairs per system.
struct MatchingRow {
  DiagnosticsRecord diagnostics;
  std::vector<std::pair<std::string, ScorePair>> impact;
};

std::string render_matching(const std::vector<MatchingRow>& rows,
                            ReportFormat format);

}  // namespace mteval

#endif  // MTEVAL_REPORT_HPP_
