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

#include "mteval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "mteval/error.hpp"
#include "mteval/utf8.hpp"

namespace mteval {

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += csv_field(fields[i]);
  }
  out.push_back('\n');
  return out;
}

std::string md_row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const std::string& cell : cells) {
    out += " " + cell + " |";
  }
  out.push_back('\n');
  return out;
}

std::string md_separator(std::size_t columns) {
  std::string out = "|";
  for (std::size_t i = 0; i < columns; ++i) out += "---|";
  out.push_back('\n');
  return out;
}

std::string latex_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&':
      case '%':
      case '#':
      case '_':
      case '{':
      case '}':
        out.push_back('\\');
        out.push_back(c);
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string latex_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += " & ";
    out += cells[i];
  }
  out += " \\\\\n";
  return out;
}

std::string latex_table_open(std::size_t columns) {
  std::string out = "\\begin{table}\n\\centering\n\\begin{tabular}{r";
  for (std::size_t i = 1; i < columns; ++i) out += "c";
  out += "}\n\\toprule\n";
  return out;
}

std::string latex_table_close(const std::string& caption) {
  return "\\bottomrule\n\\end{tabular}\n\\caption{" + caption +
         "}\n\\end{table}\n";
}

// First three codepoints plus '.', as in the matrix column headers.
std::string abbreviate(const std::string& id) {
  const auto cps = utf8_codepoints(id);
  std::string out;
  for (std::size_t i = 0; i < cps.size() && i < 3; ++i) {
    append_utf8(cps[i], &out);
  }
  out += ".";
  return out;
}

std::string pair_cell(double pre, double post) {
  return format_score(pre) + "/" + format_score(post);
}

nlohmann::json impact_json(
    const std::vector<std::pair<std::string, ScorePair>>& impact) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, pair] : impact) {
    out[name] = {{"pre", pair.pre}, {"post", pair.post}};
  }
  return out;
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
  if (name == "md") return ReportFormat::kMarkdown;
  if (name == "tex") return ReportFormat::kLatex;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw InputError("unknown format '" + std::string(name) +
                   "' (expected md, tex, csv or json)");
}

std::string format_score(double value) {
  const double scaled = std::abs(value) * 10.0;
  double rounded = std::floor(scaled + 0.5) / 10.0;
  if (value < 0) rounded = -rounded;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", rounded);
  // avoid "-0.0"
  if (std::string_view(buf) == "-0.0") return "0.0";
  return buf;
}

std::string format_full(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr - buf);
}

std::vector<RankingRow> make_ranking(const std::vector<std::string>& system_ids,
                                     const std::vector<double>& scores,
                                     const std::vector<bool>& constrained) {
  if (system_ids.empty() || system_ids.size() != scores.size() ||
      system_ids.size() != constrained.size()) {
    throw InputError("make_ranking: unaligned inputs");
  }
  std::vector<std::size_t> order(system_ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  std::vector<RankingRow> rows;
  rows.reserve(order.size());
  int next_rank = 1;
  for (const std::size_t i : order) {
    RankingRow row;
    row.system_id = system_ids[i];
    row.score = scores[i];
    row.constrained = constrained[i];
    if (constrained[i]) row.rank = next_rank++;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_ranking(const std::vector<RankingRow>& rows,
                           const std::string& metric_name,
                           const std::string& signature, ReportFormat format) {
  const std::string title = metric_name + " (" + signature + ")";
  switch (format) {
    case ReportFormat::kMarkdown: {
      std::string out = "### " + title + "\n\n";
      out += md_row({"System", "Rank", metric_name});
      out += md_separator(3);
      for (const RankingRow& row : rows) {
        out += md_row({row.system_id,
                       row.rank ? std::to_string(*row.rank) : "n/a",
                       format_score(row.score)});
      }
      return out;
    }
    case ReportFormat::kLatex: {
      std::string out = latex_table_open(3);
      out += latex_row({"System", "Rank", latex_escape(metric_name)});
      out += "\\midrule\n";
      for (const RankingRow& row : rows) {
        if (row.rank) {
          out += latex_row({latex_escape(row.system_id),
                            std::to_string(*row.rank),
                            format_score(row.score)});
        } else {
          // unconstrained systems are greyed out, as in the ranking tables
          out += latex_row({"\\color{ashgrey}" + latex_escape(row.system_id),
                            "\\color{ashgrey}n/a",
                            "\\color{ashgrey}" + format_score(row.score)});
        }
      }
      out += latex_table_close(latex_escape(title));
      return out;
    }
    case ReportFormat::kCsv: {
      std::string out = "# " + title + "\n";
      out += csv_line({"system", "rank", "score", "constrained"});
      for (const RankingRow& row : rows) {
        out += csv_line({row.system_id,
                         row.rank ? std::to_string(*row.rank) : "n/a",
                         format_full(row.score),
                         row.constrained ? "true" : "false"});
      }
      return out;
    }
    case ReportFormat::kJson: {
      nlohmann::json doc;
      doc["metric"] = metric_name;
      doc["signature"] = signature;
      doc["rows"] = nlohmann::json::array();
      for (const RankingRow& row : rows) {
        nlohmann::json j;
        j["system"] = row.system_id;
        if (row.rank) {
          j["rank"] = *row.rank;
        } else {
          j["rank"] = nullptr;
        }
        j["score"] = row.score;
        j["constrained"] = row.constrained;
        doc["rows"].push_back(std::move(j));
      }
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

int shade_level(double p_value) {
  if (p_value >= 0.5) return 0;
  if (p_value > 0.25) return 1;
  if (p_value > 0.1) return 2;
  if (p_value > 0.05) return 3;
  if (p_value > 0.01) return 4;
  if (p_value > 0.005) return 5;
  if (p_value > 0.001) return 6;
  return 7;
}

std::string render_significance(const SignificanceMatrix& matrix,
                                ReportFormat format) {
  const std::size_t n = matrix.systems.size();
  // pairs are stored upper-triangular row-major, in loop order (i, j>i)
  const auto pair_at = [&](std::size_t i, std::size_t j) -> const PairResult& {
    const std::size_t row_start = i * n - i * (i + 1) / 2;
    return matrix.pairs[row_start + (j - i - 1)];
  };
  const std::string caption = matrix.metric_name + " (" + matrix.signature +
                              "), paired bootstrap: seed=" +
                              std::to_string(matrix.seed) +
                              ", resamples=" + std::to_string(matrix.n_resamples) +
                              ", alpha=" + format_full(matrix.alpha);
  switch (format) {
    case ReportFormat::kMarkdown: {
      std::string out = "### " + caption + "\n\n";
      std::vector<std::string> header = {"System"};
      for (const std::string& id : matrix.systems) {
        header.push_back(abbreviate(id));
      }
      out += md_row(header);
      out += md_separator(header.size());
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> cells = {matrix.systems[i]};
        for (std::size_t j = 0; j < n; ++j) {
          if (j < i) {
            cells.push_back("");
          } else if (j == i) {
            cells.push_back("0.0");
          } else {
            const PairResult& pair = pair_at(i, j);
            cells.push_back(format_score(pair.delta) +
                            (pair.significant ? "*" : ""));
          }
        }
        out += md_row(cells);
      }
      out += "\n`*` = p < " + format_full(matrix.alpha) + "\n";
      return out;
    }
    case ReportFormat::kLatex: {
      std::string out = latex_table_open(n + 1);
      std::vector<std::string> header = {""};
      for (const std::string& id : matrix.systems) {
        header.push_back(latex_escape(abbreviate(id)));
      }
      out += latex_row(header);
      out += "\\midrule\n";
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> cells = {latex_escape(matrix.systems[i])};
        for (std::size_t j = 0; j < n; ++j) {
          if (j < i) {
            cells.push_back("");
          } else if (j == i) {
            cells.push_back("\\cellcolor{red!0} 0.0");
          } else {
            const PairResult& pair = pair_at(i, j);
            const int shade = shade_level(pair.p_value) * 10;
            std::string cell =
                "\\cellcolor{red!" + std::to_string(shade) + "} ";
            if (pair.significant) {
              cell += "\\underline{" + format_score(pair.delta) + "}";
            } else {
              cell += format_score(pair.delta);
            }
            cells.push_back(std::move(cell));
          }
        }
        out += latex_row(cells);
      }
      out += latex_table_close(latex_escape(caption));
      return out;
    }
    case ReportFormat::kCsv: {
      std::string out = "# " + caption + "\n";
      out += csv_line({"system_a", "system_b", "delta", "p_value",
                       "significant"});
      for (const PairResult& pair : matrix.pairs) {
        out += csv_line({pair.system_a, pair.system_b, format_full(pair.delta),
                         format_full(pair.p_value),
                         pair.significant ? "true" : "false"});
      }
      return out;
    }
    case ReportFormat::kJson: {
      nlohmann::json doc;
      doc["metric"] = matrix.metric_name;
      doc["signature"] = matrix.signature;
      doc["alpha"] = matrix.alpha;
      doc["seed"] = matrix.seed;
      doc["resamples"] = matrix.n_resamples;
      doc["systems"] = matrix.systems;
      doc["scores"] = matrix.scores;
      doc["pairs"] = nlohmann::json::array();
      for (const PairResult& pair : matrix.pairs) {
        doc["pairs"].push_back({{"system_a", pair.system_a},
                                {"system_b", pair.system_b},
                                {"delta", pair.delta},
                                {"p_value", pair.p_value},
                                {"significant", pair.significant},
                                {"shade_level", shade_level(pair.p_value)}});
      }
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_combination(const CombinationEvaluation& evaluation,
                               ReportFormat format) {
  const std::string title = "System combination";
  const auto cell = [](const std::optional<double>& value,
                       bool full_precision) {
    if (!value) return std::string("-");
    return full_precision ? format_full(*value) : format_score(*value);
  };
  switch (format) {
    case ReportFormat::kMarkdown: {
      std::string out = "### " + title + "\n\n";
      std::vector<std::string> header = {"System"};
      header.insert(header.end(), evaluation.metric_names.begin(),
                    evaluation.metric_names.end());
      out += md_row(header);
      out += md_separator(header.size());
      for (const auto& row : evaluation.rows) {
        std::vector<std::string> cells = {row.label};
        for (const auto& value : row.values) cells.push_back(cell(value, false));
        out += md_row(cells);
      }
      for (const std::string& note : evaluation.notes) {
        out += "\n_" + note + "_\n";
      }
      return out;
    }
    case ReportFormat::kLatex: {
      std::string out = latex_table_open(evaluation.metric_names.size() + 1);
      std::vector<std::string> header = {"System"};
      for (const std::string& name : evaluation.metric_names) {
        header.push_back(latex_escape(name));
      }
      out += latex_row(header);
      out += "\\midrule\n";
      for (const auto& row : evaluation.rows) {
        std::vector<std::string> cells = {latex_escape(row.label)};
        for (const auto& value : row.values) cells.push_back(cell(value, false));
        out += latex_row(cells);
      }
      std::string caption = title;
      for (const std::string& note : evaluation.notes) {
        caption += ". " + note;
      }
      out += latex_table_close(latex_escape(caption));
      return out;
    }
    case ReportFormat::kCsv: {
      std::string out = "# " + title + "\n";
      for (const std::string& note : evaluation.notes) {
        out += "# " + note + "\n";
      }
      std::vector<std::string> header = {"system"};
      header.insert(header.end(), evaluation.metric_names.begin(),
                    evaluation.metric_names.end());
      out += csv_line(header);
      for (const auto& row : evaluation.rows) {
        std::vector<std::string> cells = {row.label};
        for (const auto& value : row.values) cells.push_back(cell(value, true));
        out += csv_line(cells);
      }
      return out;
    }
    case ReportFormat::kJson: {
      nlohmann::json doc;
      doc["metrics"] = evaluation.metric_names;
      doc["signatures"] = evaluation.metric_signatures;
      doc["rows"] = nlohmann::json::array();
      for (const auto& row : evaluation.rows) {
        nlohmann::json values = nlohmann::json::object();
        for (std::size_t m = 0; m < evaluation.metric_names.size(); ++m) {
          if (row.values[m]) {
            values[evaluation.metric_names[m]] = *row.values[m];
          } else {
            values[evaluation.metric_names[m]] = nullptr;
          }
        }
        doc["rows"].push_back({{"system", row.label}, {"values", values}});
      }
      doc["notes"] = evaluation.notes;
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

ModelComparison make_model_comparison(
    const EvaluationCorpus& corpus,
    const std::vector<SegmentScoreTable>& tables) {
  if (tables.empty()) {
    throw InputError("model comparison needs at least one score table");
  }
  ModelComparison comparison;
  for (const SegmentScoreTable& table : tables) {
    comparison.model_ids.push_back(table.model_id());
  }

  const std::size_t n_systems = corpus.systems.size();
  std::vector<std::vector<double>> scores(tables.size(),
                                          std::vector<double>(n_systems));
  for (std::size_t m = 0; m < tables.size(); ++m) {
    for (std::size_t s = 0; s < n_systems; ++s) {
      scores[m][s] =
          corpus_average(tables[m], corpus.systems[s].system_id).value;
    }
  }
  // rank within each model: descending score, manifest order on ties
  std::vector<std::vector<int>> ranks(tables.size(),
                                      std::vector<int>(n_systems));
  for (std::size_t m = 0; m < tables.size(); ++m) {
    std::vector<std::size_t> order(n_systems);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return scores[m][a] > scores[m][b];
                     });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      ranks[m][order[pos]] = static_cast<int>(pos) + 1;
    }
  }
  // row order follows the first model's ranking
  std::vector<std::size_t> row_order(n_systems);
  std::iota(row_order.begin(), row_order.end(), 0);
  std::stable_sort(row_order.begin(), row_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[0][a] > scores[0][b];
                   });
  for (const std::size_t s : row_order) {
    ModelComparison::Row row;
    row.system_id = corpus.systems[s].system_id;
    for (std::size_t m = 0; m < tables.size(); ++m) {
      row.scores.push_back(scores[m][s]);
      row.ranks.push_back(ranks[m][s]);
    }
    comparison.rows.push_back(std::move(row));
  }
  return comparison;
}

std::string render_model_comparison(const ModelComparison& comparison,
                                    ReportFormat format) {
  const std::string title = "Learned-metric model comparison";
  switch (format) {
    case ReportFormat::kMarkdown: {
      std::string out = "### " + title + "\n\n";
      std::vector<std::string> header = {"System"};
      header.insert(header.end(), comparison.model_ids.begin(),
                    comparison.model_ids.end());
      out += md_row(header);
      out += md_separator(header.size());
      for (const auto& row : comparison.rows) {
        std::vector<std::string> cells = {row.system_id};
        for (std::size_t m = 0; m < row.scores.size(); ++m) {
          cells.push_back(format_score(row.scores[m]) + " (" +
                          std::to_string(row.ranks[m]) + ")");
        }
        out += md_row(cells);
      }
      return out;
    }
    case ReportFormat::kLatex: {
      std::string out = latex_table_open(comparison.model_ids.size() + 1);
      std::vector<std::string> header = {"System"};
      for (const std::string& id : comparison.model_ids) {
        header.push_back(latex_escape(id));
      }
      out += latex_row(header);
      out += "\\midrule\n";
      for (const auto& row : comparison.rows) {
        std::vector<std::string> cells = {latex_escape(row.system_id)};
        for (std::size_t m = 0; m < row.scores.size(); ++m) {
          cells.push_back(format_score(row.scores[m]) + " (" +
                          std::to_string(row.ranks[m]) + ")");
        }
        out += latex_row(cells);
      }
      out += latex_table_close(latex_escape(title));
      return out;
    }
    case ReportFormat::kCsv: {
      std::string out = "# " + title + "\n";
      std::vector<std::string> header = {"system"};
      for (const std::string& id : comparison.model_ids) {
        header.push_back(id + "_score");
        header.push_back(id + "_rank");
      }
      out += csv_line(header);
      for (const auto& row : comparison.rows) {
        std::vector<std::string> cells = {row.system_id};
        for (std::size_t m = 0; m < row.scores.size(); ++m) {
          cells.push_back(format_full(row.scores[m]));
          cells.push_back(std::to_string(row.ranks[m]));
        }
        out += csv_line(cells);
      }
      return out;
    }
    case ReportFormat::kJson: {
      nlohmann::json doc;
      doc["models"] = comparison.model_ids;
      doc["rows"] = nlohmann::json::array();
      for (const auto& row : comparison.rows) {
        nlohmann::json scores = nlohmann::json::object();
        nlohmann::json ranks = nlohmann::json::object();
        for (std::size_t m = 0; m < comparison.model_ids.size(); ++m) {
          scores[comparison.model_ids[m]] = row.scores[m];
          ranks[comparison.model_ids[m]] = row.ranks[m];
        }
        doc["rows"].push_back({{"system", row.system_id},
                               {"scores", scores},
                               {"ranks", ranks}});
      }
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_matching(const std::vector<MatchingRow>& rows,
                            ReportFormat format) {
  const std::string title = "Sentence matching and normalization";
  std::vector<std::string> metric_names;
  if (!rows.empty()) {
    for (const auto& [name, pair] : rows[0].impact) {
      metric_names.push_back(name);
    }
  }
  switch (format) {
    case ReportFormat::kMarkdown: {
      std::string out = "### " + title + "\n\n";
      std::vector<std::string> header = {"System", "Exact Match",
                                         "Self Mismatch"};
      header.insert(header.end(), metric_names.begin(), metric_names.end());
      out += md_row(header);
      out += md_separator(header.size());
      for (const MatchingRow& row : rows) {
        std::vector<std::string> cells = {
            row.diagnostics.system_id,
            std::to_string(row.diagnostics.exact_match),
            row.diagnostics.self_mismatch.quadruple()};
        for (const auto& [name, pair] : row.impact) {
          cells.push_back(pair_cell(pair.pre, pair.post));
        }
        out += md_row(cells);
      }
      return out;
    }
    case ReportFormat::kLatex: {
      std::string out = latex_table_open(3 + metric_names.size());
      std::vector<std::string> header = {"System", "Exact Match",
                                         "Self Mismatch"};
      for (const std::string& name : metric_names) {
        header.push_back(latex_escape(name));
      }
      out += latex_row(header);
      out += "\\midrule\n";
      for (const MatchingRow& row : rows) {
        std::vector<std::string> cells = {
            latex_escape(row.diagnostics.system_id),
            std::to_string(row.diagnostics.exact_match),
            row.diagnostics.self_mismatch.quadruple()};
        for (const auto& [name, pair] : row.impact) {
          cells.push_back(pair_cell(pair.pre, pair.post));
        }
        out += latex_row(cells);
      }
      out += latex_table_close(latex_escape(title));
      return out;
    }
    case ReportFormat::kCsv: {
      std::string out = "# " + title + "\n";
      std::vector<std::string> header = {"system", "exact_match",
                                         "self_mismatch"};
      for (const std::string& name : metric_names) {
        header.push_back(name + "_pre");
        header.push_back(name + "_post");
      }
      out += csv_line(header);
      for (const MatchingRow& row : rows) {
        std::vector<std::string> cells = {
            row.diagnostics.system_id,
            std::to_string(row.diagnostics.exact_match),
            row.diagnostics.self_mismatch.quadruple()};
        for (const auto& [name, pair] : row.impact) {
          cells.push_back(format_full(pair.pre));
          cells.push_back(format_full(pair.post));
        }
        out += csv_line(cells);
      }
      return out;
    }
    case ReportFormat::kJson: {
      nlohmann::json doc;
      doc["rows"] = nlohmann::json::array();
      for (const MatchingRow& row : rows) {
        nlohmann::json j;
        j["system"] = row.diagnostics.system_id;
        j["exact_match"] = row.diagnostics.exact_match;
        j["self_mismatch"] = {
            {"system_mismatches",
             row.diagnostics.self_mismatch.system_mismatches},
            {"reference_mismatches",
             row.diagnostics.self_mismatch.reference_mismatches},
            {"duplicated_sources",
             row.diagnostics.self_mismatch.duplicated_sources},
            {"total_segments", row.diagnostics.self_mismatch.total_segments},
            {"quadruple", row.diagnostics.self_mismatch.quadruple()}};
        j["system_variant_mismatches"] =
            row.diagnostics.system_variant_mismatches;
        j["impact"] = impact_json(row.impact);
        doc["rows"].push_back(std::move(j));
      }
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

}  // namespace mteval
