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

#include "mteval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <unordered_map>

#include "mteval/error.hpp"
#include "mteval/utf8.hpp"
#include "mteval/version.hpp"

namespace mteval {

namespace {

// N-gram keys are packed exactly: word n-grams as four 32-bit
// segment-local token ids, character n-grams as six 21-bit codepoints.
using Key128 = unsigned __int128;

struct Key128Hash {
  std::size_t operator()(Key128 key) const {
    // splitmix64 finalizer over both halves
    auto mix = [](std::uint64_t z) {
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      return z ^ (z >> 31);
    };
    const std::uint64_t lo = static_cast<std::uint64_t>(key);
    const std::uint64_t hi = static_cast<std::uint64_t>(key >> 64);
    return mix(lo ^ mix(hi));
  }
};

using CountMap = std::unordered_map<Key128, long, Key128Hash>;

std::string ascii_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Interns tokens into dense ids scoped to one segment's hyp+refs.
class LocalVocab {
 public:
  std::uint32_t id(const std::string& token) {
    const auto [it, inserted] = ids_.emplace(token, next_);
    if (inserted) ++next_;
    return it->second;
  }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::uint32_t next_ = 0;
};

std::vector<std::uint32_t> intern(const TokenSequence& tokens,
                                  LocalVocab* vocab) {
  std::vector<std::uint32_t> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(vocab->id(t));
  return out;
}

CountMap word_ngrams(const std::vector<std::uint32_t>& ids, int n) {
  CountMap counts;
  if (static_cast<int>(ids.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= ids.size(); ++i) {
    Key128 key = 0;
    for (int k = 0; k < n; ++k) {
      key = (key << 32) | ids[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::vector<char32_t> chrf_prepare(const std::string& text,
                                   const ChrfOptions& options) {
  const std::string source = options.lowercase ? ascii_lower(text) : text;
  std::vector<char32_t> cps;
  for (char32_t c : utf8_codepoints(source)) {
    if (options.remove_whitespace && is_unicode_whitespace(c)) continue;
    cps.push_back(c);
  }
  return cps;
}

CountMap codepoint_ngrams(const std::vector<char32_t>& cps, int n) {
  CountMap counts;
  if (static_cast<int>(cps.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= cps.size(); ++i) {
    Key128 key = 0;
    for (int k = 0; k < n; ++k) {
      key = (key << 21) | static_cast<std::uint32_t>(cps[i + k]);
    }
    ++counts[key];
  }
  return counts;
}

ChrfStatistics chrf_stats_one_ref(const std::vector<char32_t>& hyp,
                                  const std::vector<char32_t>& ref,
                                  int char_order) {
  ChrfStatistics stats(char_order);
  for (int n = 1; n <= char_order; ++n) {
    const CountMap hyp_counts = codepoint_ngrams(hyp, n);
    const CountMap ref_counts = codepoint_ngrams(ref, n);
    ChrfStatistics::Order& order = stats.orders[n - 1];
    order.hyp = std::max<long>(0, static_cast<long>(hyp.size()) - n + 1);
    order.ref = std::max<long>(0, static_cast<long>(ref.size()) - n + 1);
    for (const auto& [key, count] : hyp_counts) {
      const auto it = ref_counts.find(key);
      if (it != ref_counts.end()) order.match += std::min(count, it->second);
    }
  }
  return stats;
}

void check_alignment(std::size_t n_hyps, std::size_t n_ref_lists) {
  if (n_hyps == 0) {
    throw InputError("empty corpus: no hypothesis segments");
  }
  if (n_hyps != n_ref_lists) {
    throw InputError("alignment error: " + std::to_string(n_hyps) +
                     " hypotheses vs " + std::to_string(n_ref_lists) +
                     " reference lists");
  }
}

int uniform_nrefs(const std::vector<std::vector<TokenSequence>>& refs) {
  return refs.empty() ? 0 : static_cast<int>(refs[0].size());
}

}  // namespace

BleuStatistics& BleuStatistics::operator+=(const BleuStatistics& other) {
  for (int n = 0; n < 4; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

ChrfStatistics& ChrfStatistics::operator+=(const ChrfStatistics& other) {
  if (orders.size() < other.orders.size()) orders.resize(other.orders.size());
  for (std::size_t n = 0; n < other.orders.size(); ++n) {
    orders[n].hyp += other.orders[n].hyp;
    orders[n].ref += other.orders[n].ref;
    orders[n].match += other.orders[n].match;
  }
  return *this;
}

BleuStatistics bleu_segment_stats(const TokenSequence& hyp,
                                  const std::vector<TokenSequence>& refs) {
  if (refs.empty()) {
    throw InputError("bleu_segment_stats: segment without references");
  }
  BleuStatistics stats;
  stats.hyp_len = static_cast<long>(hyp.size());

  LocalVocab vocab;
  const auto hyp_ids = intern(hyp, &vocab);
  std::vector<std::vector<std::uint32_t>> ref_ids;
  ref_ids.reserve(refs.size());
  for (const TokenSequence& ref : refs) ref_ids.push_back(intern(ref, &vocab));

  long closest = static_cast<long>(refs[0].size());
  for (const TokenSequence& ref : refs) {
    const long len = static_cast<long>(ref.size());
    const long d_new = std::labs(len - stats.hyp_len);
    const long d_old = std::labs(closest - stats.hyp_len);
    if (d_new < d_old || (d_new == d_old && len < closest)) closest = len;
  }
  stats.ref_len = closest;

  for (int n = 1; n <= 4; ++n) {
    stats.totals[n - 1] = std::max<long>(0, stats.hyp_len - n + 1);
    const CountMap hyp_counts = word_ngrams(hyp_ids, n);
    // Clip against the maximum count over references.
    CountMap ref_max;
    for (const auto& ids : ref_ids) {
      for (const auto& [key, count] : word_ngrams(ids, n)) {
        long& slot = ref_max[key];
        slot = std::max(slot, count);
      }
    }
    for (const auto& [key, count] : hyp_counts) {
      const auto it = ref_max.find(key);
      if (it != ref_max.end()) {
        stats.matches[n - 1] += std::min(count, it->second);
      }
    }
  }
  return stats;
}

ChrfStatistics chrf_segment_stats(const std::string& hyp,
                                  const std::vector<std::string>& refs,
                                  const ChrfOptions& options) {
  if (refs.empty()) {
    throw InputError("chrf_segment_stats: segment without references");
  }
  const auto hyp_cps = chrf_prepare(hyp, options);
  ChrfStatistics best;
  double best_score = -1.0;
  for (const std::string& ref : refs) {
    ChrfStatistics stats = chrf_stats_one_ref(hyp_cps, chrf_prepare(ref, options),
                                              options.char_order);
    const double score = chrf_score_from_stats(stats, options.beta);
    if (score > best_score) {
      best_score = score;
      best = std::move(stats);
    }
  }
  return best;
}

double bleu_score_from_stats(const BleuStatistics& stats,
                             BleuSmoothing smoothing, bool effective_order) {
  if (stats.matches[0] + stats.matches[1] + stats.matches[2] +
          stats.matches[3] ==
      0) {
    return 0.0;
  }
  int orders = 4;
  if (effective_order) {
    orders = 0;
    while (orders < 4 && stats.totals[orders] > 0) ++orders;
    if (orders == 0) return 0.0;
  }
  double log_sum = 0.0;
  double smooth_denom = 1.0;
  for (int n = 0; n < orders; ++n) {
    if (stats.totals[n] == 0) return 0.0;
    double p;
    if (stats.matches[n] == 0) {
      if (smoothing == BleuSmoothing::kNone) return 0.0;
      // Doubling fallback: the k-th all-miss order contributes
      // 1 / (2^k * totals).
      smooth_denom *= 2.0;
      p = 1.0 / (smooth_denom * static_cast<double>(stats.totals[n]));
    } else {
      p = static_cast<double>(stats.matches[n]) /
          static_cast<double>(stats.totals[n]);
    }
    log_sum += std::log(p);
  }
  if (stats.hyp_len == 0) return 0.0;
  double bp = 1.0;
  if (stats.hyp_len <= stats.ref_len) {
    bp = std::exp(1.0 - static_cast<double>(stats.ref_len) /
                            static_cast<double>(stats.hyp_len));
  }
  return 100.0 * bp * std::exp(log_sum / orders);
}

double chrf_score_from_stats(const ChrfStatistics& stats, double beta) {
  // Precision and recall are averaged over the orders that have any
  // n-grams on either side, then combined into one F-beta.  An order with
  // an empty hypothesis side still counts, with zero precision and recall.
  double prec_sum = 0.0;
  double rec_sum = 0.0;
  int effective = 0;
  for (const ChrfStatistics::Order& order : stats.orders) {
    if (order.hyp == 0 && order.ref == 0) continue;
    ++effective;
    if (order.hyp > 0) {
      prec_sum += static_cast<double>(order.match) / order.hyp;
    }
    if (order.ref > 0) {
      rec_sum += static_cast<double>(order.match) / order.ref;
    }
  }
  if (effective == 0) return 0.0;
  const double prec = prec_sum / effective;
  const double rec = rec_sum / effective;
  const double denom = beta * beta * prec + rec;
  if (denom == 0.0) return 0.0;
  return 100.0 * (1.0 + beta * beta) * prec * rec / denom;
}

MetricScore bleu_corpus(const std::vector<TokenSequence>& hyps,
                        const std::vector<std::vector<TokenSequence>>& refs,
                        const BleuOptions& options) {
  check_alignment(hyps.size(), refs.size());
  MetricScore result;
  BleuStatistics corpus_stats;
  result.per_segment.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (refs[i].empty()) {
      throw InputError("segment " + std::to_string(i) + " has no reference");
    }
    const BleuStatistics stats = bleu_segment_stats(hyps[i], refs[i]);
    corpus_stats += stats;
    result.per_segment.push_back(
        bleu_score_from_stats(stats, BleuSmoothing::kExp, true));
  }
  result.value =
      bleu_score_from_stats(corpus_stats, options.smoothing,
                            options.effective_order);
  result.signature = bleu_signature(uniform_nrefs(refs), options);
  return result;
}

MetricScore chrf_corpus(const std::vector<std::string>& hyps,
                        const std::vector<std::vector<std::string>>& refs,
                        const ChrfOptions& options) {
  check_alignment(hyps.size(), refs.size());
  MetricScore result;
  ChrfStatistics corpus_stats(options.char_order);
  result.per_segment.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (refs[i].empty()) {
      throw InputError("segment " + std::to_string(i) + " has no reference");
    }
    const ChrfStatistics stats = chrf_segment_stats(hyps[i], refs[i], options);
    result.per_segment.push_back(chrf_score_from_stats(stats, options.beta));
    corpus_stats += stats;
  }
  result.value = chrf_score_from_stats(corpus_stats, options.beta);
  result.signature = chrf_signature(
      refs.empty() ? 0 : static_cast<int>(refs[0].size()), options);
  return result;
}

double bleu_segment(const TokenSequence& hyp,
                    const std::vector<TokenSequence>& refs) {
  return bleu_score_from_stats(bleu_segment_stats(hyp, refs),
                               BleuSmoothing::kExp, true);
}

double chrf_segment(const std::string& hyp,
                    const std::vector<std::string>& refs,
                    const ChrfOptions& options) {
  return chrf_score_from_stats(chrf_segment_stats(hyp, refs, options),
                               options.beta);
}

struct ChrfTextProfile::Impl {
  int char_order = 6;
  long n_codepoints = 0;
  // [n-1] -> (packed n-gram, count), sorted by key for merge intersection
  std::vector<std::vector<std::pair<Key128, long>>> per_order;
};

ChrfTextProfile::ChrfTextProfile(const std::string& text,
                                 const ChrfOptions& options) {
  auto impl = std::make_shared<Impl>();
  impl->char_order = options.char_order;
  const std::vector<char32_t> cps = chrf_prepare(text, options);
  impl->n_codepoints = static_cast<long>(cps.size());
  impl->per_order.resize(options.char_order);
  std::vector<Key128> keys;
  for (int n = 1; n <= options.char_order; ++n) {
    keys.clear();
    if (static_cast<long>(cps.size()) >= n) {
      for (std::size_t i = 0; i + n <= cps.size(); ++i) {
        Key128 key = 0;
        for (int k = 0; k < n; ++k) {
          key = (key << 21) | static_cast<std::uint32_t>(cps[i + k]);
        }
        keys.push_back(key);
      }
    }
    std::sort(keys.begin(), keys.end());
    auto& counts = impl->per_order[n - 1];
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      counts.emplace_back(keys[i], static_cast<long>(j - i));
      i = j;
    }
  }
  impl_ = std::move(impl);
}

double chrf_pair(const ChrfTextProfile& hyp, const ChrfTextProfile& ref,
                 double beta) {
  const ChrfTextProfile::Impl& h = *hyp.impl_;
  const ChrfTextProfile::Impl& r = *ref.impl_;
  const int char_order = std::min(h.char_order, r.char_order);
  ChrfStatistics stats(char_order);
  for (int n = 1; n <= char_order; ++n) {
    ChrfStatistics::Order& order = stats.orders[n - 1];
    order.hyp = std::max<long>(0, h.n_codepoints - n + 1);
    order.ref = std::max<long>(0, r.n_codepoints - n + 1);
    const auto& a = h.per_order[n - 1];
    const auto& b = r.per_order[n - 1];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first) {
        ++i;
      } else if (b[j].first < a[i].first) {
        ++j;
      } else {
        order.match += std::min(a[i].second, b[j].second);
        ++i;
        ++j;
      }
    }
  }
  return chrf_score_from_stats(stats, beta);
}

std::string tokenizer_name(WordTokenizer tokenizer) {
  switch (tokenizer) {
    case WordTokenizer::k13a:
      return "13a";
    case WordTokenizer::kZh:
      return "zh";
    case WordTokenizer::kCharCjk:
      return "char-cjk";
  }
  return "13a";
}

WordTokenizer tokenizer_for_target(std::string_view target_language) {
  if (target_language == "zh") return WordTokenizer::kZh;
  if (target_language == "ja") return WordTokenizer::kCharCjk;
  return WordTokenizer::k13a;
}

TokenSequence run_tokenizer(WordTokenizer tokenizer, const std::string& text) {
  switch (tokenizer) {
    case WordTokenizer::k13a:
      return tokenize_13a(text);
    case WordTokenizer::kZh:
    case WordTokenizer::kCharCjk:
      return tokenize_zh(text);
  }
  return tokenize_13a(text);
}

std::string bleu_signature(int nrefs, const BleuOptions& options) {
  std::string sig = "nrefs:" + std::to_string(nrefs);
  sig += options.lowercase ? "|case:lc" : "|case:mixed";
  sig += options.effective_order ? "|eff:yes" : "|eff:no";
  sig += "|tok:" + tokenizer_name(options.tokenizer);
  sig += options.smoothing == BleuSmoothing::kExp ? "|smooth:exp"
                                                  : "|smooth:none";
  sig += "|version:";
  sig += kVersion;
  return sig;
}

std::string chrf_signature(int nrefs, const ChrfOptions& options) {
  std::string sig = "nrefs:" + std::to_string(nrefs);
  sig += options.lowercase ? "|case:lc" : "|case:mixed";
  sig += "|eff:yes";
  sig += "|nc:" + std::to_string(options.char_order);
  sig += "|nw:0";
  sig += options.remove_whitespace ? "|space:no" : "|space:yes";
  sig += "|version:";
  sig += kVersion;
  return sig;
}

namespace {

std::unordered_map<std::string, std::string> parse_signature_fields(
    std::string_view signature) {
  std::unordered_map<std::string, std::string> fields;
  std::size_t pos = 0;
  while (pos <= signature.size()) {
    std::size_t bar = signature.find('|', pos);
    if (bar == std::string_view::npos) bar = signature.size();
    const std::string_view field = signature.substr(pos, bar - pos);
    const std::size_t colon = field.find(':');
    if (colon == std::string_view::npos) {
      throw InputError("bad signature field: " + std::string(field));
    }
    fields.emplace(std::string(field.substr(0, colon)),
                   std::string(field.substr(colon + 1)));
    pos = bar + 1;
    if (bar == signature.size()) break;
  }
  return fields;
}

std::string field_or_throw(
    const std::unordered_map<std::string, std::string>& fields,
    const std::string& key) {
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw InputError("signature missing field: " + key);
  }
  return it->second;
}

}  // namespace

BleuOptions parse_bleu_signature(std::string_view signature, int* nrefs) {
  const auto fields = parse_signature_fields(signature);
  BleuOptions options;
  if (nrefs != nullptr) *nrefs = std::stoi(field_or_throw(fields, "nrefs"));
  options.lowercase = field_or_throw(fields, "case") == "lc";
  options.effective_order = field_or_throw(fields, "eff") == "yes";
  const std::string tok = field_or_throw(fields, "tok");
  if (tok == "13a") {
    options.tokenizer = WordTokenizer::k13a;
  } else if (tok == "zh") {
    options.tokenizer = WordTokenizer::kZh;
  } else if (tok == "char-cjk") {
    options.tokenizer = WordTokenizer::kCharCjk;
  } else {
    throw InputError("unknown tokenizer in signature: " + tok);
  }
  options.smoothing = field_or_throw(fields, "smooth") == "exp"
                          ? BleuSmoothing::kExp
                          : BleuSmoothing::kNone;
  return options;
}

ChrfOptions parse_chrf_signature(std::string_view signature, int* nrefs) {
  const auto fields = parse_signature_fields(signature);
  ChrfOptions options;
  if (nrefs != nullptr) *nrefs = std::stoi(field_or_throw(fields, "nrefs"));
  options.lowercase = field_or_throw(fields, "case") == "lc";
  options.char_order = std::stoi(field_or_throw(fields, "nc"));
  options.remove_whitespace = field_or_throw(fields, "space") == "no";
  return options;
}

BleuOptions default_bleu_options(const EvaluationCorpus& corpus) {
  BleuOptions options;
  options.tokenizer = tokenizer_for_target(corpus.target_language());
  return options;
}

MetricScore score_bleu_system(const EvaluationCorpus& corpus,
                              std::string_view system_id,
                              std::optional<BleuOptions> options) {
  const BleuOptions opts =
      options.has_value() ? *options : default_bleu_options(corpus);
  const SystemEntry& sys = corpus.system(system_id);

  const auto prep = [&](const std::string& text) {
    return run_tokenizer(opts.tokenizer,
                         opts.lowercase ? ascii_lower(text) : text);
  };

  std::vector<TokenSequence> hyps;
  std::vector<std::vector<TokenSequence>> refs;
  hyps.reserve(corpus.segment_count());
  refs.reserve(corpus.segment_count());
  for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
    hyps.push_back(prep(sys.segments[i]));
    std::vector<TokenSequence> segment_refs;
    segment_refs.reserve(corpus.references.size());
    for (const auto& ref : corpus.references) {
      segment_refs.push_back(prep(ref[i]));
    }
    refs.push_back(std::move(segment_refs));
  }
  return bleu_corpus(hyps, refs, opts);
}

MetricScore score_chrf_system(const EvaluationCorpus& corpus,
                              std::string_view system_id,
                              std::optional<ChrfOptions> options) {
  const ChrfOptions opts = options.value_or(ChrfOptions{});
  const SystemEntry& sys = corpus.system(system_id);
  std::vector<std::vector<std::string>> refs;
  refs.reserve(corpus.segment_count());
  for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
    refs.push_back(corpus.segment_references(i));
  }
  return chrf_corpus(sys.segments, refs, opts);
}

}  // namespace mteval
