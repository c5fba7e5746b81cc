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

// Acceptance suite: one line per criterion, PASS/FAIL/SKIP, nonzero exit
// when anything fails.  The WMT22 reproduction tier runs only when
// --wmt22 DIR points at the released data (see README).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mteval/combine.hpp"
#include "mteval/corpus.hpp"
#include "mteval/diagnostics.hpp"
#include "mteval/metrics.hpp"
#include "mteval/normalize.hpp"
#include "mteval/report.hpp"
#include "mteval/significance.hpp"
#include "oracles/brute_force_metrics.hpp"

using namespace mteval;
namespace fs = std::filesystem;

namespace {

const fs::path kData(MTEVAL_TEST_DATA_DIR);
int g_failures = 0;

void report(int criterion, bool pass, const std::string& name,
            const std::string& detail = "") {
  std::printf("%s  %d  %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.empty() ? "" : " -- ",
              detail.c_str());
  if (!pass) ++g_failures;
}

void skip(int criterion, const std::string& name, const std::string& why) {
  std::printf("SKIP  %d  %s -- %s\n", criterion, name.c_str(), why.c_str());
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- criterion 1: metric oracle parity on the 50-segment fixture ----------

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const EvaluationCorpus corpus =
      load_corpus(kData / "fixture50" / "manifest.txt");
  bool pass = corpus.segment_count() == 50 && corpus.references.size() == 2;
  double worst = 0.0;
  for (const SystemEntry& sys : corpus.systems) {
    std::vector<std::vector<std::string>> refs;
    std::vector<TokenSequence> hyp_tokens;
    std::vector<std::vector<TokenSequence>> ref_tokens;
    for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
      refs.push_back(corpus.segment_references(i));
      hyp_tokens.push_back(tokenize_13a(sys.segments[i]));
      std::vector<TokenSequence> per_segment;
      for (const auto& r : refs.back()) per_segment.push_back(tokenize_13a(r));
      ref_tokens.push_back(std::move(per_segment));
    }
    const double mine_bleu = bleu_corpus(hyp_tokens, ref_tokens).value;
    const double oracle_bleu =
        mteval_oracle::bleu_corpus(hyp_tokens, ref_tokens, true, false);
    const double mine_chrf = chrf_corpus(sys.segments, refs).value;
    const double oracle_chrf = mteval_oracle::chrf_corpus(sys.segments, refs,
                                                          6, 2.0);
    worst = std::max({worst, std::abs(mine_bleu - oracle_bleu),
                      std::abs(mine_chrf - oracle_chrf)});
  }
  const double seconds = elapsed_seconds(start);
  pass = pass && worst < 1e-9 && seconds < 1.0;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "max |diff| %.2e, %.3f s", worst,
                seconds);
  report(1, pass, "metric oracle parity (50-segment fixture, 2 refs)", detail);
}

// ---- criterion 2: hand-computed anchors ------------------------------------

void criterion_2() {
  const double bleu_value =
      bleu_corpus({tokenize_13a("the cat sat on the mat tonight")},
                  {{tokenize_13a("the cat sat on the mat today")}})
          .value;
  ChrfOptions chrf_options;
  chrf_options.char_order = 2;
  const double chrf_value = chrf_segment("cat", {"cats"}, chrf_options);
  const bool pass = std::abs(bleu_value - 80.91) < 0.01 &&
                    std::abs(chrf_value - 75.22) < 0.01;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "BLEU %.4f (80.91), chrF %.4f (75.22)",
                bleu_value, chrf_value);
  report(2, pass, "hand-computed anchors", detail);
}

// ---- criterion 3: identity and zero laws -----------------------------------

void criterion_3() {
  const TokenSequence sentence = tokenize_13a("a small test sentence here");
  bool pass = bleu_corpus({sentence}, {{sentence}}).value == 100.0;
  pass = pass && chrf_corpus({"ein satz"}, {{"ein satz"}}).value == 100.0;
  BleuOptions no_smoothing;
  no_smoothing.smoothing = BleuSmoothing::kNone;
  pass = pass && bleu_corpus({tokenize_13a("aa bb cc")},
                             {{tokenize_13a("xx yy zz")}}, no_smoothing)
                         .value == 0.0;
  // effective-order conventions
  pass = pass && chrf_segment("", {"abcdef"}) == 0.0;
  pass = pass && chrf_segment("ab", {"ab"}) == 100.0;
  pass = pass && bleu_segment(tokenize_13a("x y z"),
                              {tokenize_13a("x y z")}) == 100.0;
  report(3, pass, "identity and zero laws, effective-order conventions");
}

// ---- criterion 4: bootstrap correctness ------------------------------------

void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  EvaluationCorpus corpus = load_corpus(kData / "fixture10" / "manifest.txt");
  const ResamplePlan plan = make_plan(42, 100, corpus.segment_count());
  bool pass = corpus.segment_count() == 10;

  // brute force: materialize all 100 resampled corpora, rescore from scratch
  std::vector<std::vector<std::string>> refs;
  for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
    refs.push_back(corpus.segment_references(i));
  }
  for (const std::string metric_name : {std::string("chrf"), std::string("bleu")}) {
    const auto score_lines = [&](const std::vector<std::string>& lines,
                                 const std::vector<std::vector<std::string>>&
                                     line_refs) {
      if (metric_name == "chrf") return chrf_corpus(lines, line_refs).value;
      std::vector<TokenSequence> hyps;
      std::vector<std::vector<TokenSequence>> ref_tokens;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        hyps.push_back(tokenize_13a(lines[i]));
        std::vector<TokenSequence> per_segment;
        for (const auto& r : line_refs[i]) {
          per_segment.push_back(tokenize_13a(r));
        }
        ref_tokens.push_back(std::move(per_segment));
      }
      return bleu_corpus(hyps, ref_tokens).value;
    };
    const auto& lines_a = corpus.system("sysA").segments;
    const auto& lines_b = corpus.system("sysB").segments;
    const double full_a = score_lines(lines_a, refs);
    const double full_b = score_lines(lines_b, refs);
    const bool a_better = full_a >= full_b;
    int wins = 0;
    for (const auto& indices : plan.index_sets) {
      std::vector<std::string> sample_a, sample_b;
      std::vector<std::vector<std::string>> sample_refs;
      for (const auto i : indices) {
        sample_a.push_back(lines_a[i]);
        sample_b.push_back(lines_b[i]);
        sample_refs.push_back(refs[i]);
      }
      const double sa = score_lines(sample_a, sample_refs);
      const double sb = score_lines(sample_b, sample_refs);
      if (a_better ? sa > sb : sb > sa) ++wins;
    }
    const double brute = static_cast<double>(plan.index_sets.size() - wins) /
                         static_cast<double>(plan.index_sets.size());

    const auto metric =
        metric_name == "chrf"
            ? make_chrf_metric(corpus, ChrfOptions{})
            : make_bleu_metric(corpus, default_bleu_options(corpus));
    const PairResult engine = paired_bootstrap(*metric, "sysA", "sysB", plan);
    pass = pass && engine.p_value == brute;
  }

  // self comparison via an identical copy of sysA
  {
    EvaluationCorpus with_copy = corpus;
    SystemEntry copy = with_copy.system("sysA");
    copy.system_id = "sysA_copy";
    with_copy.systems.push_back(copy);
    const auto metric = make_chrf_metric(with_copy, ChrfOptions{});
    const PairResult self =
        paired_bootstrap(*metric, "sysA", "sysA_copy", plan);
    pass = pass && self.p_value == 1.0 && self.delta == 0.0 &&
           !self.significant;
  }

  // worker-count independence
  {
    const auto metric = make_bleu_metric(corpus, default_bleu_options(corpus));
    const SignificanceMatrix one = significance_matrix(*metric, plan, 0.05, 1);
    const SignificanceMatrix eight =
        significance_matrix(*metric, plan, 0.05, 8);
    for (std::size_t i = 0; i < one.pairs.size(); ++i) {
      pass = pass && one.pairs[i].p_value == eight.pairs[i].p_value &&
             one.pairs[i].delta == eight.pairs[i].delta;
    }
  }

  const double seconds = elapsed_seconds(start);
  pass = pass && seconds < 2.0;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%.3f s", seconds);
  report(4, pass, "bootstrap matches brute force (seed 42, n=100)", detail);
}

// ---- criterion 5: MBR brute-force equivalence ------------------------------

void criterion_5() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20260808);
  std::uniform_int_distribution<int> coarse(0, 4);
  bool pass = true;
  int cases = 0;

  const auto exhaustive = [](const CandidatePool& pool,
                             const std::function<double(std::size_t, std::size_t,
                                                        std::size_t)>& u) {
    std::vector<std::size_t> winners;
    for (std::size_t seg = 0; seg < pool.n_segments(); ++seg) {
      std::size_t best = 0;
      double best_avg = -1e300;
      for (std::size_t c = 0; c < pool.n_candidates(); ++c) {
        double avg = 0.0;
        if (pool.n_candidates() > 1) {
          double sum = 0.0;
          for (std::size_t r = 0; r < pool.n_candidates(); ++r) {
            if (r != c) sum += u(seg, c, r);
          }
          avg = sum / static_cast<double>(pool.n_candidates() - 1);
        }
        if (avg > best_avg) {
          best_avg = avg;
          best = c;
        }
      }
      winners.push_back(best);
    }
    return winners;
  };

  // 1000 random utility tables (coarse values force ties)
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    const int n_candidates = 1 + static_cast<int>(rng() % 5);
    const int n_segments = 1 + static_cast<int>(rng() % 10);
    std::vector<std::vector<std::vector<double>>> utility(
        n_segments, std::vector<std::vector<double>>(
                        n_candidates, std::vector<double>(n_candidates)));
    for (auto& seg : utility) {
      for (auto& row : seg) {
        for (auto& value : row) value = coarse(rng) / 4.0;
      }
    }
    CandidatePool pool;
    for (int c = 0; c < n_candidates; ++c) {
      pool.system_ids.push_back("s" + std::to_string(c));
    }
    pool.candidates.assign(n_segments,
                           std::vector<std::string>(n_candidates, "text"));
    const auto fn = [&](std::size_t s, std::size_t c, std::size_t r) {
      return utility[s][c][r];
    };
    pass = pass &&
           mbr_select(pool, fn, "u").selected_index == exhaustive(pool, fn);
    ++cases;
  }

  // 100 pools scored with the built-in chrF utility
  const std::vector<std::string> words = {"the",  "cat", "sat", "mat",
                                          "dog",  "ran", "big", "small",
                                          "hello"};
  for (int trial = 0; trial < 100 && pass; ++trial) {
    const int n_candidates = 1 + static_cast<int>(rng() % 5);
    const int n_segments = 1 + static_cast<int>(rng() % 10);
    std::vector<std::vector<std::string>> segments(
        n_segments, std::vector<std::string>(n_candidates));
    for (auto& seg : segments) {
      for (auto& cand : seg) {
        std::string text;
        const int len = static_cast<int>(rng() % 5);
        for (int k = 0; k < len; ++k) {
          if (k > 0) text += " ";
          text += words[rng() % words.size()];
        }
        cand = text;
      }
    }
    CandidatePool pool;
    for (int c = 0; c < n_candidates; ++c) {
      pool.system_ids.push_back("s" + std::to_string(c));
    }
    pool.candidates = segments;
    const auto fn = [&](std::size_t s, std::size_t c, std::size_t r) {
      return chrf_segment(pool.candidates[s][c], {pool.candidates[s][r]});
    };
    pass = pass && mbr_select_chrf(pool).selected_index ==
                       exhaustive(pool, fn);
    ++cases;
  }

  const double seconds = elapsed_seconds(start);
  pass = pass && cases >= 1000 && seconds < 30.0;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%d cases, %.3f s", cases, seconds);
  report(5, pass, "MBR equals exhaustive argmax", detail);
}

// ---- criterion 6: oracle dominance ------------------------------------------

void criterion_6() {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> uniform(-2.0, 2.0);
  bool pass = true;
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    const int n_candidates = 1 + static_cast<int>(rng() % 5);
    const int n_segments = 1 + static_cast<int>(rng() % 10);
    std::vector<std::vector<double>> scores(n_segments,
                                            std::vector<double>(n_candidates));
    for (auto& row : scores) {
      for (auto& value : row) value = uniform(rng);
    }
    CandidatePool pool;
    for (int c = 0; c < n_candidates; ++c) {
      pool.system_ids.push_back("s" + std::to_string(c));
    }
    pool.candidates.assign(n_segments,
                           std::vector<std::string>(n_candidates, "x"));
    const CombinationOutput out = oracle_select(
        pool, [&](std::size_t s, std::size_t c) { return scores[s][c]; },
        "r");
    double selected = 0.0;
    for (int s = 0; s < n_segments; ++s) {
      selected += scores[s][out.selected_index[s]];
    }
    for (int c = 0; c < n_candidates; ++c) {
      double system = 0.0;
      for (int s = 0; s < n_segments; ++s) system += scores[s][c];
      pass = pass && selected >= system;  // exact, no tolerance
    }
  }
  report(6, pass, "oracle dominance (exact inequality, 1000 fixtures)");
}

// ---- criterion 7: normalization differential --------------------------------

void criterion_7() {
  const std::vector<std::string> sample =
      read_segment_file(kData / "normalize" / "sample.txt");
  bool pass = sample.size() == 200;
  int mismatched_lines = 0;
  for (const std::string lang : {"en", "fr", "de", "cs"}) {
    const std::vector<std::string> golden =
        read_segment_file(kData / "normalize" / ("golden." + lang + ".txt"));
    NormalizationConfig config;
    config.target_language = lang;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const std::string once = normalize_text(sample[i], config);
      if (once != golden[i]) ++mismatched_lines;
      if (normalize_text(once, config) != once) ++mismatched_lines;
    }
  }
  pass = pass && mismatched_lines == 0;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%d mismatched lines",
                mismatched_lines);
  report(7, pass, "normalization byte-identical to script-chain goldens",
         detail);
}

// ---- criterion 8: report goldens --------------------------------------------

void criterion_8() {
  bool pass = true;
  std::string failed;

  const auto check = [&](const std::string& name, const std::string& got) {
    const std::string want = slurp(kData / "goldens" / name);
    if (got != want || want.empty()) {
      pass = false;
      failed += " " + name;
    }
  };

  const auto rows = make_ranking({"AlphaSys", "BetaSys", "Online-X"},
                                 {60.04, 49.96, 70.012}, {true, true, false});
  const std::string signature =
      "nrefs:2|case:mixed|eff:no|tok:13a|smooth:exp|version:0.1.0";
  check("ranking.md",
        render_ranking(rows, "BLEU", signature, ReportFormat::kMarkdown));
  check("ranking.tex",
        render_ranking(rows, "BLEU", signature, ReportFormat::kLatex));
  check("ranking.csv",
        render_ranking(rows, "BLEU", signature, ReportFormat::kCsv));
  check("ranking.json",
        render_ranking(rows, "BLEU", signature, ReportFormat::kJson));

  SignificanceMatrix matrix;
  matrix.metric_name = "chrF";
  matrix.signature =
      "nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no|version:0.1.0";
  matrix.alpha = 0.05;
  matrix.seed = 42;
  matrix.n_resamples = 100;
  matrix.systems = {"Online-X", "AlphaSys", "BetaSys"};
  matrix.scores = {70.012, 60.04, 49.96};
  matrix.pairs = {{"Online-X", "AlphaSys", 9.972, 0.2, false},
                  {"Online-X", "BetaSys", 20.052, 0.0, true},
                  {"AlphaSys", "BetaSys", 10.08, 0.01, true}};
  check("significance.md",
        render_significance(matrix, ReportFormat::kMarkdown));
  check("significance.tex", render_significance(matrix, ReportFormat::kLatex));
  check("significance.csv", render_significance(matrix, ReportFormat::kCsv));
  check("significance.json",
        render_significance(matrix, ReportFormat::kJson));

  CombinationEvaluation eval;
  eval.metric_names = {"wmt20-comet-da", "chrF", "BLEU"};
  eval.metric_signatures = {"wmt20-comet-da", "sig-chrf", "sig-bleu"};
  eval.rows = {{"Baseline", {77.5, 79.3, 64.2}},
               {"MBR", {77.3, 75.4, 56.5}},
               {"Oracle", {86.9, 82.9, 69.2}}};
  check("combination.md", render_combination(eval, ReportFormat::kMarkdown));
  check("combination.tex", render_combination(eval, ReportFormat::kLatex));
  check("combination.csv", render_combination(eval, ReportFormat::kCsv));
  check("combination.json", render_combination(eval, ReportFormat::kJson));

  ModelComparison comparison;
  comparison.model_ids = {"wmt20-comet-da", "wmt21-comet-da"};
  comparison.rows = {{"AMU", {104.94, 14.1}, {1, 1}},
                     {"Online-B", {94.3, 13.6}, {2, 2}}};
  check("model_comparison.md",
        render_model_comparison(comparison, ReportFormat::kMarkdown));
  check("model_comparison.tex",
        render_model_comparison(comparison, ReportFormat::kLatex));
  check("model_comparison.csv",
        render_model_comparison(comparison, ReportFormat::kCsv));
  check("model_comparison.json",
        render_model_comparison(comparison, ReportFormat::kJson));

  std::vector<MatchingRow> matching(2);
  matching[0].diagnostics.system_id = "Online-W";
  matching[0].diagnostics.exact_match = 145;
  matching[0].diagnostics.self_mismatch = {3, 7, 10, 1448};
  matching[0].diagnostics.system_variant_mismatches = 2;
  matching[0].impact = {{"BLEU", {68.68, 68.62}}, {"chrF", {77.5, 77.46}}};
  matching[1].diagnostics.system_id = "JDExploreAcademy";
  matching[1].diagnostics.exact_match = 98;
  matching[1].diagnostics.self_mismatch = {0, 7, 10, 1448};
  matching[1].impact = {{"BLEU", {60.9, 60.9}}, {"chrF", {74.8, 74.8}}};
  check("matching.md", render_matching(matching, ReportFormat::kMarkdown));
  check("matching.tex", render_matching(matching, ReportFormat::kLatex));
  check("matching.csv", render_matching(matching, ReportFormat::kCsv));
  check("matching.json", render_matching(matching, ReportFormat::kJson));

  report(8, pass, "report renderers reproduce committed goldens",
         pass ? "20 documents" : "failed:" + failed);
}

// ---- criterion 9: optional WMT22 reproduction --------------------------------

void criterion_9(const std::string& wmt22_dir) {
  if (wmt22_dir.empty()) {
    skip(9, "WMT22 reproduction",
         "requires released WMT22 data; run with --wmt22 DIR (see README)");
    return;
  }
  // DIR must contain manifest.txt plus expected.tsv with rows
  // `metric<TAB>system<TAB>value` (metric: bleu, chrf, or a model id whose
  // scores live in DIR/<model id>.tsv).
  const fs::path dir(wmt22_dir);
  const EvaluationCorpus corpus = load_corpus(dir / "manifest.txt");
  std::ifstream expected(dir / "expected.tsv");
  if (!expected) {
    report(9, false, "WMT22 reproduction", "missing expected.tsv");
    return;
  }
  bool pass = true;
  std::string line;
  int checked = 0;
  while (std::getline(expected, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string metric, system;
    double want = 0.0;
    fields >> metric >> system >> want;
    double got = 0.0;
    if (metric == "bleu") {
      got = score_bleu_system(corpus, system).value;
    } else if (metric == "chrf") {
      got = score_chrf_system(corpus, system).value;
    } else {
      const SegmentScoreTable table =
          load_segment_scores(dir / (metric + ".tsv"), corpus, metric);
      got = corpus_average(table, system).value;
    }
    const bool ok = std::abs(got - want) <= 0.1;
    if (!ok) {
      std::printf("      %s %s: got %.2f, expected %.2f\n", metric.c_str(),
                  system.c_str(), got, want);
    }
    pass = pass && ok;
    ++checked;
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%d values within +/-0.1", checked);
  report(9, pass && checked > 0, "WMT22 reproduction", detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string wmt22_dir;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--wmt22" && i + 1 < argc) wmt22_dir = argv[++i];
  }
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(wmt22_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
    return 1;
  }
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
