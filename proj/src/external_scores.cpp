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

#include "mteval/external_scores.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "mteval/error.hpp"

namespace mteval {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

double parse_score(const std::string& text, const std::string& context) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(text, &consumed);
    if (consumed != text.size() || !std::isfinite(value)) {
      throw std::invalid_argument(text);
    }
    return value;
  } catch (const std::exception&) {
    throw InputError("non-numeric score '" + text + "' " + context);
  }
}

std::size_t parse_index(const std::string& text, std::size_t limit,
                        const std::string& context) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value >= limit) {
    throw InputError("bad segment index '" + text + "' " + context);
  }
  return value;
}

}  // namespace

SegmentScoreTable::SegmentScoreTable(std::string model_id,
                                     std::vector<std::string> system_ids,
                                     std::size_t n_segments)
    : model_id_(std::move(model_id)),
      system_ids_(std::move(system_ids)),
      n_segments_(n_segments),
      scores_(system_ids_.size(), std::vector<double>(n_segments, 0.0)) {}

bool SegmentScoreTable::has_system(std::string_view system_id) const {
  for (const std::string& id : system_ids_) {
    if (id == system_id) return true;
  }
  return false;
}

namespace {
std::size_t index_of(const std::vector<std::string>& ids, std::string_view id,
                     const std::string& what) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return i;
  }
  throw InputError("unknown system '" + std::string(id) + "' in " + what);
}
}  // namespace

double SegmentScoreTable::score(std::string_view system_id,
                                std::size_t segment) const {
  return scores_[index_of(system_ids_, system_id, "score table")][segment];
}

const std::vector<double>& SegmentScoreTable::system_scores(
    std::string_view system_id) const {
  return scores_[index_of(system_ids_, system_id, "score table")];
}

void SegmentScoreTable::set_score(std::string_view system_id,
                                  std::size_t segment, double value) {
  scores_[index_of(system_ids_, system_id, "score table")][segment] = value;
}

SegmentScoreTable load_segment_scores(const std::filesystem::path& path,
                                      const EvaluationCorpus& corpus,
                                      std::string model_id) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open score file: " + path.string());
  }
  if (model_id.empty()) model_id = path.stem().string();

  std::vector<std::string> system_ids;
  system_ids.reserve(corpus.systems.size());
  for (const SystemEntry& sys : corpus.systems) {
    system_ids.push_back(sys.system_id);
  }
  SegmentScoreTable table(std::move(model_id), system_ids,
                          corpus.segment_count());
  std::vector<std::vector<bool>> seen(
      system_ids.size(), std::vector<bool>(corpus.segment_count(), false));

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string context =
        "at " + path.string() + ":" + std::to_string(line_no);
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw InputError("expected 3 tab-separated fields " + context);
    }
    const std::size_t sys = index_of(system_ids, fields[0], context);
    const std::size_t seg =
        parse_index(fields[1], corpus.segment_count(), context);
    if (seen[sys][seg]) {
      throw InputError("duplicate entry for (" + fields[0] + ", " + fields[1] +
                       ") " + context);
    }
    seen[sys][seg] = true;
    table.set_score(fields[0], seg, parse_score(fields[2], context));
  }

  std::string missing;
  int missing_count = 0;
  for (std::size_t s = 0; s < system_ids.size(); ++s) {
    for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
      if (!seen[s][i]) {
        ++missing_count;
        if (missing_count <= 10) {
          missing += " (" + system_ids[s] + ", " + std::to_string(i) + ")";
        }
      }
    }
  }
  if (missing_count > 0) {
    throw InputError("score table " + path.string() + " misses " +
                     std::to_string(missing_count) + " (system, segment) pairs:" +
                     missing + (missing_count > 10 ? " ..." : ""));
  }
  return table;
}

void write_segment_scores(const std::filesystem::path& path,
                          const SegmentScoreTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write score file: " + path.string());
  }
  std::vector<std::string> ids = table.system_ids();
  std::sort(ids.begin(), ids.end());
  char buf[64];
  for (const std::string& id : ids) {
    for (std::size_t i = 0; i < table.n_segments(); ++i) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf),
                                           table.score(id, i),
                                           std::chars_format::general);
      out << id << '\t' << i << '\t' << std::string_view(buf, ptr - buf)
          << '\n';
    }
  }
}

MetricScore corpus_average(const SegmentScoreTable& table,
                           std::string_view system_id) {
  if (!table.has_system(system_id)) {
    throw InputError("unknown system '" + std::string(system_id) +
                     "' in score table " + table.model_id());
  }
  const std::vector<double>& scores = table.system_scores(system_id);
  double sum = 0.0;
  for (double s : scores) sum += s;
  MetricScore result;
  result.per_segment = scores;
  result.value = 100.0 * sum / static_cast<double>(scores.size());
  result.signature = table.model_id();
  return result;
}

PairwiseUtilityTable::PairwiseUtilityTable(std::vector<std::string> system_ids,
                                           std::size_t n_segments)
    : system_ids_(std::move(system_ids)),
      n_segments_(n_segments),
      utilities_(n_segments * system_ids_.size() * system_ids_.size(), 0.0) {}

double PairwiseUtilityTable::utility(std::size_t segment, std::size_t candidate,
                                     std::size_t pseudo_reference) const {
  const std::size_t c = system_ids_.size();
  return utilities_[(segment * c + candidate) * c + pseudo_reference];
}

void PairwiseUtilityTable::set_utility(std::size_t segment,
                                       std::size_t candidate,
                                       std::size_t pseudo_reference,
                                       double value) {
  const std::size_t c = system_ids_.size();
  utilities_[(segment * c + candidate) * c + pseudo_reference] = value;
}

PairwiseUtilityTable load_pairwise_utilities(const std::filesystem::path& path,
                                             const EvaluationCorpus& corpus) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open utility file: " + path.string());
  }
  std::vector<std::string> system_ids;
  for (const SystemEntry& sys : corpus.systems) {
    system_ids.push_back(sys.system_id);
  }
  const std::size_t c = system_ids.size();
  PairwiseUtilityTable table(system_ids, corpus.segment_count());
  std::vector<bool> seen(corpus.segment_count() * c * c, false);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string context =
        "at " + path.string() + ":" + std::to_string(line_no);
    const auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw InputError("expected 4 tab-separated fields " + context);
    }
    const std::size_t seg =
        parse_index(fields[0], corpus.segment_count(), context);
    const std::size_t cand = index_of(system_ids, fields[1], context);
    const std::size_t pref = index_of(system_ids, fields[2], context);
    const std::size_t slot = (seg * c + cand) * c + pref;
    if (seen[slot]) {
      throw InputError("duplicate utility entry " + context);
    }
    seen[slot] = true;
    table.set_utility(seg, cand, pref, parse_score(fields[3], context));
  }

  for (std::size_t seg = 0; seg < corpus.segment_count(); ++seg) {
    for (std::size_t cand = 0; cand < c; ++cand) {
      for (std::size_t pref = 0; pref < c; ++pref) {
        if (cand == pref) continue;  // diagonal optional, ignored by MBR
        if (!seen[(seg * c + cand) * c + pref]) {
          throw InputError("utility table " + path.string() +
                           " misses (segment " + std::to_string(seg) + ", " +
                           system_ids[cand] + ", " + system_ids[pref] + ")");
        }
      }
    }
  }
  return table;
}

}  // namespace mteval
