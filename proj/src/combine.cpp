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

#include "mteval/combine.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "mteval/error.hpp"
#include "mteval/metrics.hpp"
#include "parallel.hpp"

namespace mteval {

namespace {

void check_pool(const CandidatePool& pool) {
  if (pool.n_segments() == 0 || pool.n_candidates() == 0) {
    throw InputError("empty candidate pool");
  }
  for (const auto& segment : pool.candidates) {
    if (segment.size() != pool.n_candidates()) {
      throw InputError("candidate pool is ragged");
    }
  }
}

CombinationOutput select_by(const CandidatePool& pool,
                            const std::vector<std::size_t>& winners,
                            std::string method, std::string utility_id) {
  CombinationOutput out;
  out.method = std::move(method);
  out.utility_id = std::move(utility_id);
  out.selected_index = winners;
  out.selected_system.reserve(winners.size());
  out.selected_text.reserve(winners.size());
  for (std::size_t seg = 0; seg < winners.size(); ++seg) {
    out.selected_system.push_back(pool.system_ids[winners[seg]]);
    out.selected_text.push_back(pool.candidates[seg][winners[seg]]);
  }
  return out;
}

double bleu_of_lines(const EvaluationCorpus& corpus,
                     const std::vector<std::string>& lines) {
  const BleuOptions options = default_bleu_options(corpus);
  std::vector<TokenSequence> hyps;
  std::vector<std::vector<TokenSequence>> refs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    hyps.push_back(run_tokenizer(options.tokenizer, lines[i]));
    std::vector<TokenSequence> segment_refs;
    for (const auto& ref : corpus.references) {
      segment_refs.push_back(run_tokenizer(options.tokenizer, ref[i]));
    }
    refs.push_back(std::move(segment_refs));
  }
  return bleu_corpus(hyps, refs, options).value;
}

double chrf_of_lines(const EvaluationCorpus& corpus,
                     const std::vector<std::string>& lines) {
  std::vector<std::vector<std::string>> refs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    refs.push_back(corpus.segment_references(i));
  }
  return chrf_corpus(lines, refs, ChrfOptions{}).value;
}

double ingested_of_selection(const SegmentScoreTable& table,
                             const CombinationOutput& output) {
  double sum = 0.0;
  for (std::size_t i = 0; i < output.selected_system.size(); ++i) {
    sum += table.score(output.selected_system[i], i);
  }
  return 100.0 * sum / static_cast<double>(output.selected_system.size());
}

}  // namespace

CandidatePool pool_from_corpus(const EvaluationCorpus& corpus) {
  CandidatePool pool;
  for (const SystemEntry& sys : corpus.systems) {
    pool.system_ids.push_back(sys.system_id);
  }
  pool.candidates.resize(corpus.segment_count());
  for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
    pool.candidates[i].reserve(corpus.systems.size());
    for (const SystemEntry& sys : corpus.systems) {
      pool.candidates[i].push_back(sys.segments[i]);
    }
  }
  return pool;
}

CombinationOutput mbr_select(const CandidatePool& pool,
                             const SegmentUtilityFn& utility,
                             const std::string& utility_id, int threads) {
  check_pool(pool);
  const std::size_t n_cand = pool.n_candidates();
  std::vector<std::size_t> winners(pool.n_segments(), 0);
  parallel_for(pool.n_segments(), threads, [&](std::size_t seg) {
    std::size_t best = 0;
    double best_utility = 0.0;
    for (std::size_t c = 0; c < n_cand; ++c) {
      double avg = 0.0;
      if (n_cand > 1) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n_cand; ++r) {
          if (r == c) continue;
          sum += utility(seg, c, r);
        }
        avg = sum / static_cast<double>(n_cand - 1);
      }
      if (c == 0 || avg > best_utility) {
        best = c;
        best_utility = avg;
      }
    }
    winners[seg] = best;
  });
  return select_by(pool, winners, "mbr", utility_id);
}

CombinationOutput mbr_select(const CandidatePool& pool,
                             const PairwiseUtilityTable& utilities) {
  check_pool(pool);
  if (utilities.n_segments() != pool.n_segments() ||
      utilities.n_candidates() != pool.n_candidates()) {
    throw InputError("utility table shape does not match the candidate pool");
  }
  return mbr_select(
      pool,
      [&](std::size_t seg, std::size_t c, std::size_t r) {
        return utilities.utility(seg, c, r);
      },
      "utility-table");
}

CombinationOutput mbr_select_chrf(const CandidatePool& pool, int threads) {
  check_pool(pool);
  // Profiles are extracted once per candidate; the |C|^2 pair loop then
  // only intersects count maps.
  std::vector<std::vector<ChrfTextProfile>> profiles(pool.n_segments());
  parallel_for(pool.n_segments(), threads, [&](std::size_t seg) {
    profiles[seg].reserve(pool.n_candidates());
    for (const std::string& candidate : pool.candidates[seg]) {
      profiles[seg].emplace_back(candidate);
    }
  });
  return mbr_select(
      pool,
      [&](std::size_t seg, std::size_t c, std::size_t r) {
        return chrf_pair(profiles[seg][c], profiles[seg][r]);
      },
      "chrf", threads);
}

CombinationOutput oracle_select(const CandidatePool& pool,
                                const SegmentScoreFn& score,
                                const std::string& score_id) {
  check_pool(pool);
  std::vector<std::size_t> winners(pool.n_segments(), 0);
  for (std::size_t seg = 0; seg < pool.n_segments(); ++seg) {
    std::size_t best = 0;
    double best_score = score(seg, 0);
    for (std::size_t c = 1; c < pool.n_candidates(); ++c) {
      const double s = score(seg, c);
      if (s > best_score) {
        best = c;
        best_score = s;
      }
    }
    winners[seg] = best;
  }
  return select_by(pool, winners, "oracle", score_id);
}

CombinationOutput oracle_select(const CandidatePool& pool,
                                const SegmentScoreTable& scores) {
  check_pool(pool);
  for (const std::string& id : pool.system_ids) {
    if (!scores.has_system(id)) {
      throw InputError("score table " + scores.model_id() +
                       " misses system " + id);
    }
  }
  if (scores.n_segments() != pool.n_segments()) {
    throw InputError("score table segment count does not match the pool");
  }
  return oracle_select(
      pool,
      [&](std::size_t seg, std::size_t c) {
        return scores.score(pool.system_ids[c], seg);
      },
      scores.model_id());
}

CombinationOutput oracle_select_chrf(const EvaluationCorpus& corpus,
                                     int threads) {
  const CandidatePool pool = pool_from_corpus(corpus);
  // Cache the per-candidate chrF against the references; with several
  // references the segment keeps its best-scoring one, which is exactly
  // the max over single-reference scores.
  std::vector<std::vector<double>> scores(
      pool.n_segments(), std::vector<double>(pool.n_candidates(), 0.0));
  parallel_for(pool.n_segments(), threads, [&](std::size_t seg) {
    std::vector<ChrfTextProfile> ref_profiles;
    ref_profiles.reserve(corpus.references.size());
    for (const auto& ref : corpus.references) {
      ref_profiles.emplace_back(ref[seg]);
    }
    for (std::size_t c = 0; c < pool.n_candidates(); ++c) {
      const ChrfTextProfile candidate(pool.candidates[seg][c]);
      double best = 0.0;
      for (const ChrfTextProfile& ref : ref_profiles) {
        best = std::max(best, chrf_pair(candidate, ref));
      }
      scores[seg][c] = best;
    }
  });
  return oracle_select(
      pool, [&](std::size_t seg, std::size_t c) { return scores[seg][c]; },
      "chrf");
}

CombinationEvaluation evaluate_combination(const EvaluationCorpus& corpus,
                                           const CombinationOutput* mbr,
                                           const CombinationOutput* oracle,
                                           const SegmentScoreTable* ingested) {
  CombinationEvaluation eval;
  if (ingested != nullptr) {
    eval.metric_names.push_back(ingested->model_id());
    eval.metric_signatures.push_back(ingested->model_id());
  } else {
    eval.notes.push_back(
        "learned-metric column omitted: no segment score table supplied");
  }
  const ChrfOptions chrf_options;
  const BleuOptions bleu_options = default_bleu_options(corpus);
  const int nrefs = static_cast<int>(corpus.references.size());
  eval.metric_names.push_back("chrF");
  eval.metric_signatures.push_back(chrf_signature(nrefs, chrf_options));
  eval.metric_names.push_back("BLEU");
  eval.metric_signatures.push_back(bleu_signature(nrefs, bleu_options));

  // Baseline: the best single system, chosen independently per metric.
  CombinationEvaluation::Row baseline{"Baseline", {}};
  if (ingested != nullptr) {
    double best = 0.0;
    bool first = true;
    for (const SystemEntry& sys : corpus.systems) {
      const double value = corpus_average(*ingested, sys.system_id).value;
      if (first || value > best) {
        best = value;
        first = false;
      }
    }
    baseline.values.push_back(best);
  }
  {
    double best_chrf = 0.0;
    double best_bleu = 0.0;
    bool first = true;
    for (const SystemEntry& sys : corpus.systems) {
      const double c = score_chrf_system(corpus, sys.system_id).value;
      const double b = score_bleu_system(corpus, sys.system_id).value;
      if (first) {
        best_chrf = c;
        best_bleu = b;
        first = false;
      } else {
        best_chrf = std::max(best_chrf, c);
        best_bleu = std::max(best_bleu, b);
      }
    }
    baseline.values.push_back(best_chrf);
    baseline.values.push_back(best_bleu);
  }
  eval.rows.push_back(std::move(baseline));

  const auto combined_row = [&](const CombinationOutput& output,
                                const std::string& label) {
    CombinationEvaluation::Row row{label, {}};
    if (ingested != nullptr) {
      row.values.push_back(ingested_of_selection(*ingested, output));
    }
    row.values.push_back(chrf_of_lines(corpus, output.selected_text));
    row.values.push_back(bleu_of_lines(corpus, output.selected_text));
    return row;
  };
  if (mbr != nullptr) eval.rows.push_back(combined_row(*mbr, "MBR"));
  if (oracle != nullptr) eval.rows.push_back(combined_row(*oracle, "Oracle"));
  return eval;
}

void write_combination(const CombinationOutput& output,
                       const std::filesystem::path& path) {
  write_segment_file(path, output.selected_text);
  nlohmann::json provenance;
  provenance["method"] = output.method;
  provenance["utility"] = output.utility_id;
  nlohmann::json segments = nlohmann::json::array();
  for (std::size_t i = 0; i < output.selected_system.size(); ++i) {
    segments.push_back({{"index", i}, {"system", output.selected_system[i]}});
  }
  provenance["segments"] = std::move(segments);
  std::ofstream out(path.string() + ".provenance.json", std::ios::binary);
  if (!out) {
    throw InputError("cannot write provenance sidecar for " + path.string());
  }
  out << provenance.dump(2) << '\n';
}

}  // namespace mteval
