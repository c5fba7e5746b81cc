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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mteval/combine.hpp"
#include "mteval/corpus.hpp"
#include "mteval/diagnostics.hpp"
#include "mteval/error.hpp"
#include "mteval/external_scores.hpp"
#include "mteval/metrics.hpp"
#include "mteval/normalize.hpp"
#include "mteval/report.hpp"
#include "mteval/significance.hpp"
#include "mteval/utf8.hpp"
#include "mteval/version.hpp"

namespace {

using namespace mteval;

void emit(const std::string& document, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << document;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write output file: " + out_path);
  }
  out << document;
}

// "--comet-scores id=path" entries; a bare path uses the file stem as id.
struct ScoreFileArg {
  std::string model_id;
  std::string path;
};

ScoreFileArg parse_score_arg(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos) {
    return {std::filesystem::path(arg).stem().string(), arg};
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::vector<SegmentScoreTable> load_score_tables(
    const std::vector<std::string>& args, const EvaluationCorpus& corpus) {
  std::vector<SegmentScoreTable> tables;
  for (const std::string& arg : args) {
    const ScoreFileArg parsed = parse_score_arg(arg);
    tables.push_back(
        load_segment_scores(parsed.path, corpus, parsed.model_id));
  }
  return tables;
}

void warn_cjk_normalization(const std::string& language) {
  if (normalization_unreliable_for(language)) {
    std::cerr << "warning: punctuation normalization was not designed for "
                 "target language '"
              << language << "'; scores on normalized text may be misleading\n";
  }
}

int run_score(const std::string& manifest,
              const std::vector<std::string>& metrics,
              const std::vector<std::string>& comet_args,
              const std::string& format_name, const std::string& out_path,
              const std::string& per_segment_path) {
  const ReportFormat format = parse_format(format_name);
  for (const std::string& metric : metrics) {
    if (metric != "bleu" && metric != "chrf") {
      throw InputError("unknown metric '" + metric +
                       "' (expected bleu or chrf); use --comet-scores for "
                       "ingested metrics");
    }
  }
  const EvaluationCorpus corpus = load_corpus(manifest);
  if (corpus.systems.empty()) {
    throw InputError("manifest declares no systems to score");
  }
  const bool want_chrf =
      metrics.empty() || std::count(metrics.begin(), metrics.end(), "chrf") > 0;
  const bool want_bleu =
      metrics.empty() || std::count(metrics.begin(), metrics.end(), "bleu") > 0;
  if (!per_segment_path.empty()) {
    if (want_chrf + want_bleu != 1) {
      throw InputError("--per-segment requires exactly one of --metric bleu "
                       "or --metric chrf");
    }
    if (corpus.systems.size() != 1) {
      throw InputError("--per-segment requires a manifest with exactly one "
                       "system");
    }
  }

  std::vector<std::string> ids;
  std::vector<bool> constrained;
  for (const SystemEntry& sys : corpus.systems) {
    ids.push_back(sys.system_id);
    constrained.push_back(sys.constrained);
  }

  std::string document;
  const auto append_table = [&](const std::vector<double>& scores,
                                const std::string& name,
                                const std::string& signature) {
    if (!document.empty()) document += "\n";
    document +=
        render_ranking(make_ranking(ids, scores, constrained), name, signature,
                       format);
  };

  const auto dump_per_segment = [&](const MetricScore& score) {
    if (per_segment_path.empty()) return;
    std::ofstream out(per_segment_path, std::ios::binary);
    if (!out) {
      throw InputError("cannot write per-segment file: " + per_segment_path);
    }
    for (std::size_t i = 0; i < score.per_segment.size(); ++i) {
      out << i << '\t' << format_full(score.per_segment[i]) << '\n';
    }
  };

  if (want_chrf) {
    std::vector<double> scores;
    std::string signature;
    for (const std::string& id : ids) {
      const MetricScore score = score_chrf_system(corpus, id);
      scores.push_back(score.value);
      signature = score.signature;
      if (ids.size() == 1) dump_per_segment(score);
    }
    append_table(scores, "chrF", signature);
  }
  if (want_bleu) {
    std::vector<double> scores;
    std::string signature;
    for (const std::string& id : ids) {
      const MetricScore score = score_bleu_system(corpus, id);
      scores.push_back(score.value);
      signature = score.signature;
      if (ids.size() == 1) dump_per_segment(score);
    }
    append_table(scores, "BLEU", signature);
  }

  const std::vector<SegmentScoreTable> tables =
      load_score_tables(comet_args, corpus);
  for (const SegmentScoreTable& table : tables) {
    std::vector<double> scores;
    for (const std::string& id : ids) {
      scores.push_back(corpus_average(table, id).value);
    }
    append_table(scores, table.model_id(), table.model_id());
  }
  if (tables.size() > 1) {
    document += "\n";
    document += render_model_comparison(make_model_comparison(corpus, tables),
                                        format);
  }
  emit(document, out_path);
  return 0;
}

int run_sigtest(const std::string& manifest, const std::string& metric,
                const std::vector<std::string>& comet_args, std::uint64_t seed,
                int resamples, double alpha, const std::string& format_name,
                const std::string& out_path, int threads) {
  const ReportFormat format = parse_format(format_name);
  const EvaluationCorpus corpus = load_corpus(manifest);
  if (corpus.systems.size() < 2) {
    throw InputError("significance testing needs at least 2 systems");
  }

  std::unique_ptr<CorpusMetric> corpus_metric;
  if (metric == "bleu") {
    corpus_metric = make_bleu_metric(corpus, default_bleu_options(corpus));
  } else if (metric == "chrf") {
    corpus_metric = make_chrf_metric(corpus, ChrfOptions{});
  } else {
    for (const std::string& arg : comet_args) {
      const ScoreFileArg parsed = parse_score_arg(arg);
      if (parsed.model_id == metric) {
        const SegmentScoreTable table =
            load_segment_scores(parsed.path, corpus, parsed.model_id);
        corpus_metric = make_ingested_metric(corpus, table);
        break;
      }
    }
    if (corpus_metric == nullptr) {
      throw InputError("unknown metric '" + metric +
                       "': expected bleu, chrf, or the id of a "
                       "--comet-scores table");
    }
  }

  const ResamplePlan plan = make_plan(seed, resamples, corpus.segment_count());
  const SignificanceMatrix matrix =
      significance_matrix(*corpus_metric, plan, alpha, threads);
  emit(render_significance(matrix, format), out_path);
  return 0;
}

int run_combine(const std::string& manifest, const std::string& method,
                const std::string& utility, const std::string& segment_scores,
                const std::vector<std::string>& comet_args,
                const std::string& format_name, const std::string& out_path,
                const std::string& table_path, int threads) {
  const ReportFormat format = parse_format(format_name);
  if (out_path.empty()) {
    throw InputError("--out is required: path for the combined system file");
  }
  const EvaluationCorpus corpus = load_corpus(manifest);
  if (corpus.systems.empty()) {
    throw InputError("manifest declares no systems to combine");
  }
  const CandidatePool pool = pool_from_corpus(corpus);

  std::optional<SegmentScoreTable> oracle_scores;
  if (!segment_scores.empty()) {
    oracle_scores = load_segment_scores(segment_scores, corpus);
  }

  CombinationOutput output;
  if (method == "mbr") {
    if (utility == "chrf") {
      output = mbr_select_chrf(pool, threads);
    } else if (utility.rfind("file:", 0) == 0) {
      const PairwiseUtilityTable utilities =
          load_pairwise_utilities(utility.substr(5), corpus);
      output = mbr_select(pool, utilities);
    } else {
      throw InputError("unknown utility '" + utility +
                       "' (expected chrf or file:PATH)");
    }
  } else if (method == "oracle") {
    if (oracle_scores) {
      output = oracle_select(pool, *oracle_scores);
    } else {
      output = oracle_select_chrf(corpus, threads);
    }
  } else {
    throw InputError("unknown method '" + method +
                     "' (expected mbr or oracle)");
  }
  write_combination(output, out_path);

  // Learned-metric column: an explicit --comet-scores table wins, else the
  // oracle's selection scores double as the ingested metric.
  std::vector<SegmentScoreTable> tables = load_score_tables(comet_args, corpus);
  const SegmentScoreTable* ingested = nullptr;
  if (!tables.empty()) {
    ingested = &tables[0];
  } else if (oracle_scores) {
    ingested = &*oracle_scores;
  }
  const CombinationOutput* mbr_ptr = method == "mbr" ? &output : nullptr;
  const CombinationOutput* oracle_ptr = method == "oracle" ? &output : nullptr;
  const CombinationEvaluation evaluation =
      evaluate_combination(corpus, mbr_ptr, oracle_ptr, ingested);
  emit(render_combination(evaluation, format), table_path);
  return 0;
}

int run_stats(const std::string& manifest, const std::string& lang_override,
              const std::vector<std::string>& comet_args,
              const std::vector<std::string>& comet_normalized_args,
              const std::string& format_name, const std::string& out_path) {
  const ReportFormat format = parse_format(format_name);
  const EvaluationCorpus corpus = load_corpus(manifest);
  if (corpus.systems.empty()) {
    throw InputError("manifest declares no systems");
  }
  NormalizationConfig config;
  config.target_language =
      lang_override.empty() ? corpus.target_language() : lang_override;
  warn_cjk_normalization(config.target_language);

  std::vector<SegmentScoreTable> pre = load_score_tables(comet_args, corpus);
  std::vector<SegmentScoreTable> post =
      load_score_tables(comet_normalized_args, corpus);
  const SegmentScoreTable* pre_ptr = pre.empty() ? nullptr : &pre[0];
  const SegmentScoreTable* post_ptr = post.empty() ? nullptr : &post[0];

  const std::vector<DiagnosticsRecord> records = diagnostics_table(corpus);
  std::vector<MatchingRow> rows;
  rows.reserve(records.size());
  for (const DiagnosticsRecord& record : records) {
    MatchingRow row;
    row.diagnostics = record;
    row.impact = normalization_impact(corpus, record.system_id, config,
                                      pre_ptr, post_ptr);
    rows.push_back(std::move(row));
  }
  emit(render_matching(rows, format), out_path);
  return 0;
}

int run_normalize(const std::string& lang) {
  warn_cjk_normalization(lang);
  NormalizationConfig config;
  config.target_language = lang;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(std::cin, line)) {
    ++line_no;
    std::size_t bad_offset = 0;
    if (!validate_utf8(line, &bad_offset)) {
      throw InputError("invalid UTF-8 on stdin line " +
                       std::to_string(line_no) + " at byte " +
                       std::to_string(bad_offset));
    }
    std::cout << normalize_text(line, config) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MT evaluation harness: surface metrics, paired bootstrap "
               "significance, system combination, matching diagnostics and "
               "punctuation normalization"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  const int default_threads =
      std::max(1u, std::thread::hardware_concurrency());

  // score
  auto* score = app.add_subcommand("score", "Rank systems with chrF/BLEU and "
                                            "ingested learned-metric scores");
  std::string score_manifest, score_format = "md", score_out,
              score_per_segment;
  std::vector<std::string> score_metrics, score_comet;
  score->add_option("--manifest", score_manifest, "corpus manifest")
      ->required();
  score->add_option("--metric", score_metrics,
                    "metric to report: bleu or chrf (repeatable; default both)");
  score->add_option("--comet-scores", score_comet,
                    "segment score TSV, as id=path (repeatable)");
  score->add_option("--format", score_format, "md, tex, csv or json");
  score->add_option("--out", score_out, "output file (default stdout)");
  score->add_option("--per-segment", score_per_segment,
                    "per-segment TSV dump (single metric, single system)");

  // sigtest
  auto* sigtest = app.add_subcommand(
      "sigtest", "Paired bootstrap significance matrix for one metric");
  std::string sig_manifest, sig_metric = "chrf", sig_format = "md", sig_out;
  std::vector<std::string> sig_comet;
  std::uint64_t sig_seed = 42;
  int sig_resamples = 1000;
  double sig_alpha = 0.05;
  int sig_threads = default_threads;
  sigtest->add_option("--manifest", sig_manifest, "corpus manifest")
      ->required();
  sigtest->add_option("--metric", sig_metric,
                      "bleu, chrf, or the id of a --comet-scores table");
  sigtest->add_option("--comet-scores", sig_comet,
                      "segment score TSV, as id=path (repeatable)");
  sigtest->add_option("--seed", sig_seed, "resampling seed");
  sigtest->add_option("--resamples", sig_resamples, "number of resamples");
  sigtest->add_option("--alpha", sig_alpha, "significance threshold");
  sigtest->add_option("--format", sig_format, "md, tex, csv or json");
  sigtest->add_option("--out", sig_out, "output file (default stdout)");
  sigtest->add_option("--threads", sig_threads, "worker threads");

  // combine
  auto* combine = app.add_subcommand(
      "combine", "MBR or oracle system combination over pooled candidates");
  std::string comb_manifest, comb_method = "mbr", comb_utility = "chrf",
              comb_segment_scores, comb_format = "md", comb_out, comb_table_out;
  std::vector<std::string> comb_comet;
  int comb_threads = default_threads;
  combine->add_option("--manifest", comb_manifest, "corpus manifest")
      ->required();
  combine->add_option("--method", comb_method, "mbr or oracle");
  combine->add_option("--utility", comb_utility,
                      "MBR utility: chrf or file:PATH (pairwise TSV)");
  combine->add_option("--segment-scores", comb_segment_scores,
                      "reference-based segment scores TSV for oracle");
  combine->add_option("--comet-scores", comb_comet,
                      "segment score TSV for the evaluation table");
  combine->add_option("--format", comb_format, "md, tex, csv or json");
  combine->add_option("--out", comb_out, "combined system file (required)");
  combine->add_option("--table-out", comb_table_out,
                      "evaluation table file (default stdout)");
  combine->add_option("--threads", comb_threads, "worker threads");

  // stats
  auto* stats = app.add_subcommand(
      "stats", "Exact-match / self-mismatch diagnostics with pre/post "
               "normalization scores");
  std::string stats_manifest, stats_lang, stats_format = "md", stats_out;
  std::vector<std::string> stats_comet, stats_comet_norm;
  stats->add_option("--manifest", stats_manifest, "corpus manifest")
      ->required();
  stats->add_option("--lang", stats_lang,
                    "normalization language (default: target of direction)");
  stats->add_option("--comet-scores", stats_comet,
                    "segment score TSV on original outputs");
  stats->add_option("--normalized-comet-scores", stats_comet_norm,
                    "segment score TSV on normalized outputs");
  stats->add_option("--format", stats_format, "md, tex, csv or json");
  stats->add_option("--out", stats_out, "output file (default stdout)");

  // normalize
  auto* normalize =
      app.add_subcommand("normalize", "Normalize punctuation, stdin to stdout");
  std::string norm_lang = "en";
  normalize->add_option("-l,--lang", norm_lang, "target language code");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (score->parsed()) {
      return run_score(score_manifest, score_metrics, score_comet,
                       score_format, score_out, score_per_segment);
    }
    if (sigtest->parsed()) {
      return run_sigtest(sig_manifest, sig_metric, sig_comet, sig_seed,
                         sig_resamples, sig_alpha, sig_format, sig_out,
                         sig_threads);
    }
    if (combine->parsed()) {
      return run_combine(comb_manifest, comb_method, comb_utility,
                         comb_segment_scores, comb_comet, comb_format,
                         comb_out, comb_table_out, comb_threads);
    }
    if (stats->parsed()) {
      return run_stats(stats_manifest, stats_lang, stats_comet,
                       stats_comet_norm, stats_format, stats_out);
    }
    if (normalize->parsed()) {
      return run_normalize(norm_lang);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
