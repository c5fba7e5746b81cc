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

#include "mteval/significance.hpp"

#include <algorithm>
#include <numeric>

#include "mteval/error.hpp"
#include "parallel.hpp"

namespace mteval {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t avalanche(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += kGolden;
    return avalanche(state_);
  }

  // Unbiased-enough bounded draw via 128-bit multiply-shift; exact and
  // portable, which matters more here than the ~2^-64 modulo bias.
  std::uint32_t next_below(std::uint64_t bound) {
    const unsigned __int128 product =
        static_cast<unsigned __int128>(next()) * bound;
    return static_cast<std::uint32_t>(product >> 64);
  }

 private:
  std::uint64_t state_;
};

// Per-segment sufficient statistics for every system, computed once.
template <typename Stats>
class StatisticsMetric : public CorpusMetric {
 public:
  StatisticsMetric(std::string name, std::string signature,
                   std::vector<std::string> system_ids)
      : name_(std::move(name)),
        signature_(std::move(signature)),
        system_ids_(std::move(system_ids)) {}

  std::string name() const override { return name_; }
  std::string signature() const override { return signature_; }
  std::vector<std::string> system_ids() const override { return system_ids_; }
  std::size_t corpus_size() const override {
    return segment_stats_.empty() ? 0 : segment_stats_[0].size();
  }

  double score_full(std::string_view system_id) const override {
    return full_scores_[index(system_id)];
  }

  double score_subset(std::string_view system_id,
                      std::span<const std::uint32_t> indices) const override {
    const auto& stats = segment_stats_[index(system_id)];
    Stats sum = make_empty();
    for (const std::uint32_t i : indices) sum += stats[i];
    return score_stats(sum);
  }

 protected:
  virtual Stats make_empty() const = 0;
  virtual double score_stats(const Stats& stats) const = 0;

  std::size_t index(std::string_view system_id) const {
    for (std::size_t i = 0; i < system_ids_.size(); ++i) {
      if (system_ids_[i] == system_id) return i;
    }
    throw InputError("unknown system: " + std::string(system_id));
  }

  void finalize() {
    full_scores_.reserve(segment_stats_.size());
    for (const auto& stats : segment_stats_) {
      Stats sum = make_empty();
      for (const Stats& s : stats) sum += s;
      full_scores_.push_back(score_stats(sum));
    }
  }

  std::string name_;
  std::string signature_;
  std::vector<std::string> system_ids_;
  std::vector<std::vector<Stats>> segment_stats_;  // [system][segment]
  std::vector<double> full_scores_;
};

class BleuMetric final : public StatisticsMetric<BleuStatistics> {
 public:
  BleuMetric(const EvaluationCorpus& corpus, const BleuOptions& options)
      : StatisticsMetric("BLEU",
                         bleu_signature(
                             static_cast<int>(corpus.references.size()), options),
                         {}),
        options_(options) {
    for (const SystemEntry& sys : corpus.systems) {
      system_ids_.push_back(sys.system_id);
    }
    std::vector<std::vector<TokenSequence>> ref_tokens(corpus.segment_count());
    for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
      for (const auto& ref : corpus.references) {
        ref_tokens[i].push_back(run_tokenizer(options.tokenizer, ref[i]));
      }
    }
    for (const SystemEntry& sys : corpus.systems) {
      std::vector<BleuStatistics> stats;
      stats.reserve(corpus.segment_count());
      for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
        stats.push_back(bleu_segment_stats(
            run_tokenizer(options.tokenizer, sys.segments[i]), ref_tokens[i]));
      }
      segment_stats_.push_back(std::move(stats));
    }
    finalize();
  }

 private:
  BleuStatistics make_empty() const override { return BleuStatistics{}; }
  double score_stats(const BleuStatistics& stats) const override {
    return bleu_score_from_stats(stats, options_.smoothing,
                                 options_.effective_order);
  }

  BleuOptions options_;
};

class ChrfMetric final : public StatisticsMetric<ChrfStatistics> {
 public:
  ChrfMetric(const EvaluationCorpus& corpus, const ChrfOptions& options)
      : StatisticsMetric("chrF",
                         chrf_signature(
                             static_cast<int>(corpus.references.size()), options),
                         {}),
        options_(options) {
    for (const SystemEntry& sys : corpus.systems) {
      system_ids_.push_back(sys.system_id);
    }
    for (const SystemEntry& sys : corpus.systems) {
      std::vector<ChrfStatistics> stats;
      stats.reserve(corpus.segment_count());
      for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
        stats.push_back(chrf_segment_stats(
            sys.segments[i], corpus.segment_references(i), options_));
      }
      segment_stats_.push_back(std::move(stats));
    }
    finalize();
  }

 private:
  ChrfStatistics make_empty() const override {
    return ChrfStatistics(options_.char_order);
  }
  double score_stats(const ChrfStatistics& stats) const override {
    return chrf_score_from_stats(stats, options_.beta);
  }

  ChrfOptions options_;
};

class IngestedMetric final : public CorpusMetric {
 public:
  IngestedMetric(const EvaluationCorpus& corpus, const SegmentScoreTable& table)
      : name_(table.model_id()), signature_(table.model_id()) {
    for (const SystemEntry& sys : corpus.systems) {
      if (!table.has_system(sys.system_id)) {
        throw InputError("score table " + table.model_id() +
                         " misses system " + sys.system_id);
      }
      system_ids_.push_back(sys.system_id);
      scores_.push_back(table.system_scores(sys.system_id));
      full_scores_.push_back(corpus_average(table, sys.system_id).value);
    }
  }

  std::string name() const override { return name_; }
  std::string signature() const override { return signature_; }
  std::vector<std::string> system_ids() const override { return system_ids_; }
  std::size_t corpus_size() const override {
    return scores_.empty() ? 0 : scores_[0].size();
  }

  double score_full(std::string_view system_id) const override {
    return full_scores_[index(system_id)];
  }

  double score_subset(std::string_view system_id,
                      std::span<const std::uint32_t> indices) const override {
    const auto& scores = scores_[index(system_id)];
    double sum = 0.0;
    for (const std::uint32_t i : indices) sum += scores[i];
    return 100.0 * sum / static_cast<double>(indices.size());
  }

 private:
  std::size_t index(std::string_view system_id) const {
    for (std::size_t i = 0; i < system_ids_.size(); ++i) {
      if (system_ids_[i] == system_id) return i;
    }
    throw InputError("unknown system: " + std::string(system_id));
  }

  std::string name_;
  std::string signature_;
  std::vector<std::string> system_ids_;
  std::vector<std::vector<double>> scores_;
  std::vector<double> full_scores_;
};

void check_plan(const CorpusMetric& metric, const ResamplePlan& plan) {
  if (plan.index_sets.empty()) {
    throw InputError("degenerate resample plan: no index sets");
  }
  if (plan.corpus_size != metric.corpus_size()) {
    throw InputError("resample plan built for corpus size " +
                     std::to_string(plan.corpus_size) + ", metric has " +
                     std::to_string(metric.corpus_size()));
  }
}

}  // namespace

ResamplePlan make_plan(std::uint64_t seed, int n_resamples,
                       std::size_t corpus_size) {
  if (corpus_size == 0) {
    throw InputError("cannot build a resample plan for an empty corpus");
  }
  if (n_resamples < 1) {
    throw InputError("n_resamples must be >= 1");
  }
  ResamplePlan plan;
  plan.seed = seed;
  plan.n_resamples = n_resamples;
  plan.corpus_size = corpus_size;
  plan.index_sets.resize(n_resamples);
  for (int r = 0; r < n_resamples; ++r) {
    SplitMix64 rng(avalanche(seed + kGolden * (static_cast<std::uint64_t>(r) + 1)));
    auto& indices = plan.index_sets[r];
    indices.reserve(corpus_size);
    for (std::size_t i = 0; i < corpus_size; ++i) {
      indices.push_back(rng.next_below(corpus_size));
    }
  }
  return plan;
}

std::unique_ptr<CorpusMetric> make_bleu_metric(const EvaluationCorpus& corpus,
                                               const BleuOptions& options) {
  return std::make_unique<BleuMetric>(corpus, options);
}

std::unique_ptr<CorpusMetric> make_chrf_metric(const EvaluationCorpus& corpus,
                                               const ChrfOptions& options) {
  return std::make_unique<ChrfMetric>(corpus, options);
}

std::unique_ptr<CorpusMetric> make_ingested_metric(
    const EvaluationCorpus& corpus, const SegmentScoreTable& table) {
  return std::make_unique<IngestedMetric>(corpus, table);
}

PairResult paired_bootstrap(const CorpusMetric& metric,
                            std::string_view system_a,
                            std::string_view system_b,
                            const ResamplePlan& plan, double alpha) {
  check_plan(metric, plan);
  PairResult result;
  result.system_a = std::string(system_a);
  result.system_b = std::string(system_b);
  const double full_a = metric.score_full(system_a);
  const double full_b = metric.score_full(system_b);
  result.delta = full_a - full_b;

  // The full-corpus winner must keep strictly winning; ties are failures.
  // An exact full-corpus tie arbitrarily casts system_a as the winner.
  const bool a_is_better = full_a >= full_b;
  int wins = 0;
  for (const auto& indices : plan.index_sets) {
    const double sa = metric.score_subset(system_a, indices);
    const double sb = metric.score_subset(system_b, indices);
    if (a_is_better ? sa > sb : sb > sa) ++wins;
  }
  result.p_value =
      static_cast<double>(plan.index_sets.size() - wins) /
      static_cast<double>(plan.index_sets.size());
  result.significant = result.p_value < alpha;
  return result;
}

SignificanceMatrix significance_matrix(const CorpusMetric& metric,
                                       const ResamplePlan& plan, double alpha,
                                       int threads) {
  check_plan(metric, plan);
  const std::vector<std::string> ids = metric.system_ids();
  if (ids.size() < 2) {
    throw InputError("significance matrix needs at least 2 systems");
  }

  SignificanceMatrix matrix;
  matrix.metric_name = metric.name();
  matrix.signature = metric.signature();
  matrix.alpha = alpha;
  matrix.seed = plan.seed;
  matrix.n_resamples = plan.n_resamples;

  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> full_scores(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    full_scores[i] = metric.score_full(ids[i]);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return full_scores[a] > full_scores[b];
                   });
  for (const std::size_t i : order) {
    matrix.systems.push_back(ids[i]);
    matrix.scores.push_back(full_scores[i]);
  }

  // One shared plan: every (system, resample) cell is scored once, then
  // all pairs compare precomputed values.
  const std::size_t n_sys = matrix.systems.size();
  const std::size_t n_res = plan.index_sets.size();
  std::vector<double> resampled(n_sys * n_res);
  parallel_for(n_sys * n_res, threads, [&](std::size_t cell) {
    const std::size_t s = cell / n_res;
    const std::size_t r = cell % n_res;
    resampled[cell] =
        metric.score_subset(matrix.systems[s], plan.index_sets[r]);
  });

  for (std::size_t i = 0; i < n_sys; ++i) {
    for (std::size_t j = i + 1; j < n_sys; ++j) {
      PairResult pair;
      pair.system_a = matrix.systems[i];
      pair.system_b = matrix.systems[j];
      const double full_a = matrix.scores[i];
      const double full_b = matrix.scores[j];
      pair.delta = full_a - full_b;
      const bool a_is_better = full_a >= full_b;
      int wins = 0;
      for (std::size_t r = 0; r < n_res; ++r) {
        const double sa = resampled[i * n_res + r];
        const double sb = resampled[j * n_res + r];
        if (a_is_better ? sa > sb : sb > sa) ++wins;
      }
      pair.p_value = static_cast<double>(n_res - wins) /
                     static_cast<double>(n_res);
      pair.significant = pair.p_value < alpha;
      matrix.pairs.push_back(std::move(pair));
    }
  }
  return matrix;
}

}  // namespace mteval
