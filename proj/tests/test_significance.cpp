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

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "mteval/corpus.hpp"
#include "mteval/error.hpp"
#include "mteval/metrics.hpp"

using namespace mteval;
namespace fs = std::filesystem;

namespace {

EvaluationCorpus fixture10() {
  return load_corpus(fs::path(MTEVAL_TEST_DATA_DIR) / "fixture10" /
                     "manifest.txt");
}

// Deliberately naive resampler: materialize every resampled corpus as
// plain text and rescore it from scratch with the public corpus scorers.
// Written against the definition, not the engine.
double brute_force_p_value(const EvaluationCorpus& corpus,
                           const std::string& metric,
                           const std::string& system_a,
                           const std::string& system_b,
                           const ResamplePlan& plan) {
  const auto score_lines = [&](const std::vector<std::string>& lines,
                               const std::vector<std::vector<std::string>>&
                                   refs) -> double {
    if (metric == "chrf") {
      return chrf_corpus(lines, refs).value;
    }
    std::vector<TokenSequence> hyps;
    std::vector<std::vector<TokenSequence>> ref_tokens;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      hyps.push_back(tokenize_13a(lines[i]));
      std::vector<TokenSequence> per_segment;
      for (const auto& r : refs[i]) per_segment.push_back(tokenize_13a(r));
      ref_tokens.push_back(std::move(per_segment));
    }
    return bleu_corpus(hyps, ref_tokens).value;
  };

  const std::vector<std::string>& lines_a = corpus.system(system_a).segments;
  const std::vector<std::string>& lines_b = corpus.system(system_b).segments;
  std::vector<std::vector<std::string>> refs;
  for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
    refs.push_back(corpus.segment_references(i));
  }

  const double full_a = score_lines(lines_a, refs);
  const double full_b = score_lines(lines_b, refs);
  const bool a_is_better = full_a >= full_b;

  int wins = 0;
  for (const auto& indices : plan.index_sets) {
    std::vector<std::string> sample_a, sample_b;
    std::vector<std::vector<std::string>> sample_refs;
    for (const std::uint32_t i : indices) {
      sample_a.push_back(lines_a[i]);
      sample_b.push_back(lines_b[i]);
      sample_refs.push_back(refs[i]);
    }
    const double sa = score_lines(sample_a, sample_refs);
    const double sb = score_lines(sample_b, sample_refs);
    if (a_is_better ? sa > sb : sb > sa) ++wins;
  }
  return static_cast<double>(plan.index_sets.size() - wins) /
         static_cast<double>(plan.index_sets.size());
}

}  // namespace

TEST_CASE("plans are deterministic in their inputs") {
  const ResamplePlan p1 = make_plan(7, 2, 3);
  const ResamplePlan p2 = make_plan(7, 2, 3);
  CHECK(p1.index_sets == p2.index_sets);
  CHECK(p1.index_sets.size() == 2);
  CHECK(p1.index_sets[0].size() == 3);
  for (const auto& set : p1.index_sets) {
    for (const auto i : set) CHECK(i < 3);
  }

  const ResamplePlan q1 = make_plan(7, 1000, 100);
  const ResamplePlan q2 = make_plan(8, 1000, 100);
  CHECK(q1.index_sets != q2.index_sets);

  const ResamplePlan single = make_plan(5, 4, 1);
  for (const auto& set : single.index_sets) {
    CHECK(set == std::vector<std::uint32_t>{0});
  }

  CHECK_THROWS_AS(make_plan(1, 10, 0), InputError);
  CHECK_THROWS_AS(make_plan(1, 0, 10), InputError);
}

TEST_CASE("self comparison ties every resample") {
  // two byte-identical systems
  const fs::path dir =
      fs::temp_directory_path() / ("mteval_sig_self_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "src.txt") << "s1\ns2\ns3\n";
    std::ofstream(dir / "ref.txt") << "the cat sat\na small dog ran\nhello there\n";
    std::ofstream(dir / "a.txt") << "the cat sat\na dog ran\nhello world\n";
    std::ofstream(dir / "b.txt") << "the cat sat\na dog ran\nhello world\n";
    std::ofstream(dir / "manifest.txt")
        << "direction: cs-en\nsource: src.txt\nreference: ref.txt\n"
           "system: A constrained a.txt\nsystem: B constrained b.txt\n";
  }
  const EvaluationCorpus corpus = load_corpus(dir / "manifest.txt");
  const auto metric = make_chrf_metric(corpus, ChrfOptions{});
  const ResamplePlan plan = make_plan(42, 50, corpus.segment_count());
  const PairResult result = paired_bootstrap(*metric, "A", "B", plan);
  CHECK(result.delta == 0.0);
  CHECK(result.p_value == 1.0);
  CHECK_FALSE(result.significant);
  fs::remove_all(dir);
}

TEST_CASE("single-segment corpus with a strict winner has p zero") {
  const fs::path dir =
      fs::temp_directory_path() / ("mteval_sig_one_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "src.txt") << "s\n";
    std::ofstream(dir / "ref.txt") << "the exact reference text\n";
    std::ofstream(dir / "a.txt") << "the exact reference text\n";
    std::ofstream(dir / "b.txt") << "completely unrelated words\n";
    std::ofstream(dir / "manifest.txt")
        << "direction: cs-en\nsource: src.txt\nreference: ref.txt\n"
           "system: A constrained a.txt\nsystem: B constrained b.txt\n";
  }
  const EvaluationCorpus corpus = load_corpus(dir / "manifest.txt");
  const auto metric = make_chrf_metric(corpus, ChrfOptions{});
  const ResamplePlan plan = make_plan(1, 25, 1);
  const PairResult result = paired_bootstrap(*metric, "A", "B", plan);
  CHECK(result.p_value == 0.0);
  CHECK(result.delta > 0.0);
  CHECK(result.significant);
  fs::remove_all(dir);
}

TEST_CASE("engine matches the brute-force resampler exactly") {
  const EvaluationCorpus corpus = fixture10();
  const ResamplePlan plan = make_plan(42, 100, corpus.segment_count());

  for (const std::string metric_name : {"chrf", "bleu"}) {
    const auto metric =
        metric_name == "chrf"
            ? make_chrf_metric(corpus, ChrfOptions{})
            : make_bleu_metric(corpus, default_bleu_options(corpus));
    const PairResult engine =
        paired_bootstrap(*metric, "sysA", "sysB", plan);
    const double brute =
        brute_force_p_value(corpus, metric_name, "sysA", "sysB", plan);
    CHECK(engine.p_value == brute);
  }
}

TEST_CASE("delta is antisymmetric and p consistent under swap") {
  const EvaluationCorpus corpus = fixture10();
  const ResamplePlan plan = make_plan(11, 64, corpus.segment_count());
  const auto metric = make_chrf_metric(corpus, ChrfOptions{});
  const PairResult ab = paired_bootstrap(*metric, "sysA", "sysB", plan);
  const PairResult ba = paired_bootstrap(*metric, "sysB", "sysA", plan);
  CHECK(ab.delta == -ba.delta);
  // the same full-corpus winner is tracked either way, so p is identical
  CHECK(ab.p_value == ba.p_value);
}

TEST_CASE("ingested metric resamples by averaging raw segment scores") {
  const EvaluationCorpus corpus = fixture10();
  // synthetic per-segment scores: sysA gets i/10, sysB gets a constant
  SegmentScoreTable table("toy", {"sysA", "sysB"}, corpus.segment_count());
  for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
    table.set_score("sysA", i, static_cast<double>(i) / 10.0);
    table.set_score("sysB", i, 0.3);
  }
  const auto metric = make_ingested_metric(corpus, table);
  CHECK(metric->score_full("sysB") == doctest::Approx(30.0));
  const ResamplePlan plan = make_plan(3, 200, corpus.segment_count());
  const PairResult pair = paired_bootstrap(*metric, "sysA", "sysB", plan);

  // brute force: same multisets, mean of raw scores x100
  const double full_a = metric->score_full("sysA");
  const bool a_better = full_a >= 30.0;
  int wins = 0;
  for (const auto& indices : plan.index_sets) {
    double sum_a = 0.0, sum_b = 0.0;
    for (const auto i : indices) {
      sum_a += table.score("sysA", i);
      sum_b += table.score("sysB", i);
    }
    const double sa = 100.0 * sum_a / indices.size();
    const double sb = 100.0 * sum_b / indices.size();
    if (a_better ? sa > sb : sb > sa) ++wins;
  }
  const double expected =
      static_cast<double>(plan.index_sets.size() - wins) / plan.index_sets.size();
  CHECK(pair.p_value == expected);
}

TEST_CASE("matrix covers all pairs under one shared plan") {
  const EvaluationCorpus corpus = fixture10();
  const auto metric = make_chrf_metric(corpus, ChrfOptions{});
  const ResamplePlan plan = make_plan(42, 100, corpus.segment_count());
  const SignificanceMatrix matrix = significance_matrix(*metric, plan);
  CHECK(matrix.systems.size() == 2);
  CHECK(matrix.pairs.size() == 1);
  CHECK(matrix.scores[0] >= matrix.scores[1]);
  // the matrix pair must equal the standalone computation on the same plan
  const PairResult standalone = paired_bootstrap(
      *metric, matrix.systems[0], matrix.systems[1], plan);
  CHECK(matrix.pairs[0].p_value == standalone.p_value);
  CHECK(matrix.pairs[0].delta == standalone.delta);
}

TEST_CASE("eleven systems yield fifty-five pairs") {
  const fs::path dir = fs::temp_directory_path() /
                       ("mteval_sig_eleven_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "src.txt") << "s1\ns2\n";
    std::ofstream(dir / "ref.txt") << "one two three\nfour five six\n";
    std::string manifest =
        "direction: cs-en\nsource: src.txt\nreference: ref.txt\n";
    for (int i = 0; i < 11; ++i) {
      const std::string name = "sys" + std::to_string(i);
      std::ofstream(dir / (name + ".txt"))
          << "one two x" << i << "\nfour five y" << i << "\n";
      manifest += "system: " + name + " constrained " + name + ".txt\n";
    }
    std::ofstream(dir / "manifest.txt") << manifest;
  }
  const EvaluationCorpus corpus = load_corpus(dir / "manifest.txt");
  const auto metric = make_chrf_metric(corpus, ChrfOptions{});
  const ResamplePlan plan = make_plan(9, 20, corpus.segment_count());
  const SignificanceMatrix matrix = significance_matrix(*metric, plan);
  CHECK(matrix.pairs.size() == 55);
  fs::remove_all(dir);
}

TEST_CASE("results are independent of the worker count") {
  const EvaluationCorpus corpus = fixture10();
  const auto metric = make_bleu_metric(corpus, default_bleu_options(corpus));
  const ResamplePlan plan = make_plan(42, 100, corpus.segment_count());
  const SignificanceMatrix one = significance_matrix(*metric, plan, 0.05, 1);
  const SignificanceMatrix eight = significance_matrix(*metric, plan, 0.05, 8);
  REQUIRE(one.pairs.size() == eight.pairs.size());
  for (std::size_t i = 0; i < one.pairs.size(); ++i) {
    CHECK(one.pairs[i].p_value == eight.pairs[i].p_value);
    CHECK(one.pairs[i].delta == eight.pairs[i].delta);
  }
}

TEST_CASE("plan size mismatch is rejected") {
  const EvaluationCorpus corpus = fixture10();
  const auto metric = make_chrf_metric(corpus, ChrfOptions{});
  const ResamplePlan wrong = make_plan(1, 10, corpus.segment_count() + 1);
  CHECK_THROWS_AS(paired_bootstrap(*metric, "sysA", "sysB", wrong), InputError);
  CHECK_THROWS_AS(paired_bootstrap(*metric, "sysA", "nope",
                                   make_plan(1, 10, corpus.segment_count())),
                  InputError);
}
