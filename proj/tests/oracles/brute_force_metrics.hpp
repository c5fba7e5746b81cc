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

// Deliberately naive reference scorers used to cross-check the metric
// kernels.  The n-gram counting here is independent of the library: plain
// std::map over token vectors / codepoint strings, a private UTF-8
// decoder, and the score formulas written out directly.  Keep this file
// free of includes from the library's metric headers.

#ifndef MTEVAL_TESTS_ORACLES_BRUTE_FORCE_METRICS_HPP_
#define MTEVAL_TESTS_ORACLES_BRUTE_FORCE_METRICS_HPP_

#include <string>
#include <vector>

namespace mteval_oracle {

// Corpus BLEU over pre-tokenized input.  refs[i] lists the reference token
// sequences of segment i.  smoothing_exp selects the doubling fallback for
// zero numerators; effective_order drops trailing orders without
// hypothesis n-grams from the geometric mean.
double bleu_corpus(const std::vector<std::vector<std::string>>& hyps,
                   const std::vector<std::vector<std::vector<std::string>>>& refs,
                   bool smoothing_exp, bool effective_order);

// Corpus chrF over raw strings; refs[i] lists reference strings of
// segment i.  Statistics per order are aggregated over segments with the
// best-scoring reference chosen per segment, precision/recall are averaged
// over orders with any n-grams, and a single F-beta is computed.
double chrf_corpus(const std::vector<std::string>& hyps,
                   const std::vector<std::vector<std::string>>& refs,
                   int char_order, double beta);

double chrf_segment(const std::string& hyp, const std::vector<std::string>& refs,
                    int char_order, double beta);

}  // namespace mteval_oracle

#endif  // MTEVAL_TESTS_ORACLES_BRUTE_FORCE_METRICS_HPP_
