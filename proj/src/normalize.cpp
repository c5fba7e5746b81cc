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

#include "mteval/normalize.hpp"

#include <array>
#include <string_view>

#include "mteval/error.hpp"
#include "mteval/metrics.hpp"
#include "mteval/utf8.hpp"

namespace mteval {

namespace {

// All passes below mirror one substitution of the source scripts, applied
// as full left-to-right passes in script order.  Replacement text is never
// rescanned, and multi-character matches are consumed whole, matching
// perl s///g semantics.

std::string replace_literal(std::string_view s, std::string_view from,
                            std::string_view to) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s.compare(pos, from.size(), from) == 0) {
      out.append(to);
      pos += from.size();
    } else {
      out.push_back(s[pos]);
      ++pos;
    }
  }
  return out;
}

// Pattern "X *" -> ". ": the character plus any run of ASCII spaces.
std::string replace_fullstop(std::string_view s, std::string_view stop) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s.compare(pos, stop.size(), stop) == 0) {
      pos += stop.size();
      while (pos < s.size() && s[pos] == ' ') ++pos;
      out.append(". ");
    } else {
      out.push_back(s[pos]);
      ++pos;
    }
  }
  return out;
}

std::string squeeze_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ' ' && !out.empty() && out.back() == ' ') continue;
    out.push_back(s[i]);
  }
  return out;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
// Byte-mode perl \s.
bool is_perl_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// ") X" -> ")X" for X in .!:?;,
std::string close_paren_punct(std::string_view s) {
  static constexpr std::string_view kPunct = ".!:?;,";
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (pos + 2 < s.size() && s[pos] == ')' && s[pos + 1] == ' ' &&
        kPunct.find(s[pos + 2]) != std::string_view::npos) {
      out.push_back(')');
      out.push_back(s[pos + 2]);
      pos += 3;
    } else {
      out.push_back(s[pos]);
      ++pos;
    }
  }
  return out;
}

// "<digit> %" -> "<digit>%"
std::string digit_space_percent(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (pos + 2 < s.size() && is_digit(s[pos]) && s[pos + 1] == ' ' &&
        s[pos + 2] == '%') {
      out.push_back(s[pos]);
      out.push_back('%');
      pos += 3;
    } else {
      out.push_back(s[pos]);
      ++pos;
    }
  }
  return out;
}

// "<alpha><quote><alpha>" -> "<alpha>'<alpha>"; both letters consumed.
std::string letter_quote_letter(std::string_view s, std::string_view quote) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (pos + 1 + quote.size() < s.size() && is_ascii_alpha(s[pos]) &&
        s.compare(pos + 1, quote.size(), quote) == 0 &&
        is_ascii_alpha(s[pos + 1 + quote.size()])) {
      out.push_back(s[pos]);
      out.push_back('\'');
      out.push_back(s[pos + 1 + quote.size()]);
      pos += 2 + quote.size();
    } else {
      out.push_back(s[pos]);
      ++pos;
    }
  }
  return out;
}

// en style: '"' followed by a run of [,.] moves the run before the quote.
std::string quote_then_punct_run(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == '"' && pos + 1 < s.size() &&
        (s[pos + 1] == ',' || s[pos + 1] == '.')) {
      std::size_t end = pos + 1;
      while (end < s.size() && (s[end] == ',' || s[end] == '.')) ++end;
      out.append(s.substr(pos + 1, end - pos - 1));
      out.push_back('"');
      pos = end;
    } else {
      out.push_back(s[pos]);
      ++pos;
    }
  }
  return out;
}

// Non-en style: '(\.+)"(\s*[^<])' -> '"$1$2'.  The trailing context is one
// byte that is not '<', possibly preceded by whitespace; when the run of
// whitespace reaches the end of the string its last byte doubles as that
// context byte.
std::string periods_quote_swap(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == '.') {
      std::size_t dots_end = pos;
      while (dots_end < s.size() && s[dots_end] == '.') ++dots_end;
      if (dots_end < s.size() && s[dots_end] == '"') {
        std::size_t ws_end = dots_end + 1;
        while (ws_end < s.size() && is_perl_space(s[ws_end])) ++ws_end;
        std::size_t tail_end = 0;
        bool matched = false;
        if (ws_end < s.size()) {
          if (s[ws_end] != '<') {
            tail_end = ws_end + 1;
            matched = true;
          } else if (ws_end > dots_end + 1) {
            // give one whitespace byte back to serve as [^<]
            tail_end = ws_end;
            matched = true;
          }
        } else if (ws_end > dots_end + 1) {
          tail_end = ws_end;
          matched = true;
        }
        if (matched) {
          out.push_back('"');
          out.append(s.substr(pos, dots_end - pos));       // the dots
          out.append(s.substr(dots_end + 1, tail_end - dots_end - 1));
          pos = tail_end;
          continue;
        }
      }
    }
    out.push_back(s[pos]);
    ++pos;
  }
  return out;
}

// "<digit><NBSP><digit>" -> "<digit><sep><digit>"; both digits consumed.
std::string digit_nbsp_digit(std::string_view s, char separator) {
  static constexpr std::string_view kNbsp = "\xC2\xA0";
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (pos + 3 < s.size() && is_digit(s[pos]) &&
        s.compare(pos + 1, 2, kNbsp) == 0 && is_digit(s[pos + 3])) {
      out.push_back(s[pos]);
      out.push_back(separator);
      out.push_back(s[pos + 3]);
      pos += 4;
    } else {
      out.push_back(s[pos]);
      ++pos;
    }
  }
  return out;
}

// Codepoints in Unicode category C (control, format, surrogate, private
// use).  Unassigned codepoints are not tracked except where they bridge
// listed format ranges; the fixtures avoid them.
bool is_category_c(char32_t cp) {
  if (cp <= 0x1F || (cp >= 0x7F && cp <= 0x9F)) return true;  // Cc
  if (cp == 0xAD) return true;
  static constexpr std::array<std::pair<char32_t, char32_t>, 18> kRanges = {{
      {0x600, 0x605},
      {0x61C, 0x61C},
      {0x6DD, 0x6DD},
      {0x70F, 0x70F},
      {0x890, 0x891},
      {0x8E2, 0x8E2},
      {0x180E, 0x180E},
      {0x200B, 0x200F},
      {0x202A, 0x202E},
      {0x2060, 0x206F},
      {0xD800, 0xDFFF},    // Cs
      {0xE000, 0xF8FF},    // Co
      {0xFEFF, 0xFEFF},
      {0xFFF9, 0xFFFB},
      {0x110BD, 0x110BD},
      {0x110CD, 0x110CD},
      {0x13430, 0x1343F},
      {0x1BCA0, 0x1BCA3},
  }};
  for (const auto& [lo, hi] : kRanges) {
    if (cp >= lo && cp <= hi) return true;
  }
  if (cp >= 0x1D173 && cp <= 0x1D17A) return true;
  if (cp == 0xE0001 || (cp >= 0xE0020 && cp <= 0xE007F)) return true;
  if (cp >= 0xF0000 && cp <= 0xFFFFD) return true;    // Co plane 15
  if (cp >= 0x100000 && cp <= 0x10FFFD) return true;  // Co plane 16
  return false;
}

}  // namespace

std::string replace_unicode_punctuation(const std::string& line) {
  // Table order matches the script; the two full stops also consume
  // following spaces.
  std::string s = line;
  s = replace_literal(s, "，", ",");
  s = replace_fullstop(s, "。");
  s = replace_literal(s, "、", ",");
  s = replace_literal(s, "”", "\"");
  s = replace_literal(s, "“", "\"");
  s = replace_literal(s, "∶", ":");
  s = replace_literal(s, "：", ":");
  s = replace_literal(s, "？", "?");
  s = replace_literal(s, "《", "\"");
  s = replace_literal(s, "》", "\"");
  s = replace_literal(s, "）", ")");
  s = replace_literal(s, "！", "!");
  s = replace_literal(s, "（", "(");
  s = replace_literal(s, "；", ";");
  s = replace_literal(s, "１", "\"");  // script quirk kept verbatim
  s = replace_literal(s, "」", "\"");
  s = replace_literal(s, "「", "\"");
  s = replace_literal(s, "０", "0");
  s = replace_literal(s, "３", "3");
  s = replace_literal(s, "２", "2");
  s = replace_literal(s, "５", "5");
  s = replace_literal(s, "６", "6");
  s = replace_literal(s, "９", "9");
  s = replace_literal(s, "７", "7");
  s = replace_literal(s, "８", "8");
  s = replace_literal(s, "４", "4");
  s = replace_fullstop(s, "．");
  s = replace_literal(s, "～", "~");
  s = replace_literal(s, "’", "'");
  s = replace_literal(s, "…", "...");
  s = replace_literal(s, "━", "-");
  s = replace_literal(s, "〈", "<");
  s = replace_literal(s, "〉", ">");
  s = replace_literal(s, "【", "[");
  s = replace_literal(s, "】", "]");
  s = replace_literal(s, "％", "%");
  return s;
}

std::string normalize_punctuation(const std::string& line,
                                  const std::string& language) {
  constexpr std::string_view kNbsp = "\xC2\xA0";
  // The scripts see the newline; [^<] can match it at end of line, so the
  // pass chain runs with the newline appended.
  std::string s = line + "\n";
  s = replace_literal(s, "\r", "");
  // remove extra spaces
  s = replace_literal(s, "(", " (");
  s = replace_literal(s, ")", ") ");
  s = squeeze_spaces(s);
  s = close_paren_punct(s);
  s = replace_literal(s, "( ", "(");
  s = replace_literal(s, " )", ")");
  s = digit_space_percent(s);
  s = replace_literal(s, " :", ":");
  s = replace_literal(s, " ;", ";");
  // normalize unicode punctuation
  s = replace_literal(s, "`", "'");
  s = replace_literal(s, "''", " \" ");
  s = replace_literal(s, "„", "\"");
  s = replace_literal(s, "“", "\"");
  s = replace_literal(s, "”", "\"");
  s = replace_literal(s, "–", "-");
  s = replace_literal(s, "—", " - ");
  s = squeeze_spaces(s);
  s = replace_literal(s, "´", "'");
  s = letter_quote_letter(s, "‘");
  s = letter_quote_letter(s, "’");
  s = replace_literal(s, "‘", "\"");
  s = replace_literal(s, "‚", "\"");
  s = replace_literal(s, "’", "\"");
  s = replace_literal(s, "''", "\"");
  s = replace_literal(s, "´´", "\"");
  s = replace_literal(s, "…", "...");
  // French quotes
  s = replace_literal(s, std::string(kNbsp) + "«" + std::string(kNbsp),
                      " \"");
  s = replace_literal(s, "«" + std::string(kNbsp), "\"");
  s = replace_literal(s, "«", "\"");
  s = replace_literal(s, std::string(kNbsp) + "»" + std::string(kNbsp),
                      "\" ");
  s = replace_literal(s, std::string(kNbsp) + "»", "\"");
  s = replace_literal(s, "»", "\"");
  // handle pseudo-spaces
  s = replace_literal(s, std::string(kNbsp) + "%", "%");
  s = replace_literal(s, "nº" + std::string(kNbsp), "nº ");
  s = replace_literal(s, std::string(kNbsp) + ":", ":");
  s = replace_literal(s, std::string(kNbsp) + "º" + "C", " º" "C");
  s = replace_literal(s, std::string(kNbsp) + "cm", " cm");
  s = replace_literal(s, std::string(kNbsp) + "?", "?");
  s = replace_literal(s, std::string(kNbsp) + "!", "!");
  s = replace_literal(s, std::string(kNbsp) + ";", ";");
  s = replace_literal(s, "," + std::string(kNbsp), ", ");
  s = squeeze_spaces(s);

  if (language == "en") {
    s = quote_then_punct_run(s);
  } else if (language == "cs" || language == "cz") {
    // Czech keeps both conventions as-is.
  } else {
    s = replace_literal(s, ",\"", "\",");
    s = periods_quote_swap(s);
  }

  const bool comma_grouping = language == "de" || language == "es" ||
                              language == "cz" || language == "cs" ||
                              language == "fr";
  s = digit_nbsp_digit(s, comma_grouping ? ',' : '.');

  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string remove_non_printing(const std::string& line) {
  std::string out;
  out.reserve(line.size());
  for (char32_t cp : utf8_codepoints(line)) {
    if (is_category_c(cp)) {
      out.push_back(' ');
    } else {
      append_utf8(cp, &out);
    }
  }
  return out;
}

std::string normalize_text(const std::string& line,
                           const NormalizationConfig& config) {
  std::string s = line;
  for (const NormalizeStage stage : config.stages) {
    switch (stage) {
      case NormalizeStage::kUnicodePunct:
        s = replace_unicode_punctuation(s);
        break;
      case NormalizeStage::kPunctNorm:
        s = normalize_punctuation(s, config.target_language);
        break;
      case NormalizeStage::kStripNonPrint:
        s = remove_non_printing(s);
        break;
    }
  }
  return s;
}

std::vector<std::string> normalize_lines(const std::vector<std::string>& lines,
                                         const NormalizationConfig& config) {
  std::vector<std::string> out;
  out.reserve(lines.size());
  for (const std::string& line : lines) {
    out.push_back(normalize_text(line, config));
  }
  return out;
}

bool normalization_unreliable_for(const std::string& target_language) {
  return target_language == "zh" || target_language == "ja";
}

std::vector<std::pair<std::string, ScorePair>> normalization_impact(
    const EvaluationCorpus& corpus, std::string_view system_id,
    const NormalizationConfig& config, const SegmentScoreTable* ingested_pre,
    const SegmentScoreTable* ingested_post) {
  const SystemEntry& sys = corpus.system(system_id);
  const std::vector<std::string> normalized =
      normalize_lines(sys.segments, config);

  std::vector<std::vector<TokenSequence>> ref_tokens;
  std::vector<std::vector<std::string>> ref_texts;
  const BleuOptions bleu_options = default_bleu_options(corpus);
  for (std::size_t i = 0; i < corpus.segment_count(); ++i) {
    ref_texts.push_back(corpus.segment_references(i));
    std::vector<TokenSequence> tokens;
    for (const auto& ref : corpus.references) {
      tokens.push_back(run_tokenizer(bleu_options.tokenizer, ref[i]));
    }
    ref_tokens.push_back(std::move(tokens));
  }
  const auto tokenize_lines = [&](const std::vector<std::string>& lines) {
    std::vector<TokenSequence> tokens;
    tokens.reserve(lines.size());
    for (const std::string& line : lines) {
      tokens.push_back(run_tokenizer(bleu_options.tokenizer, line));
    }
    return tokens;
  };

  std::vector<std::pair<std::string, ScorePair>> impact;
  impact.emplace_back(
      "BLEU",
      ScorePair{
          bleu_corpus(tokenize_lines(sys.segments), ref_tokens, bleu_options)
              .value,
          bleu_corpus(tokenize_lines(normalized), ref_tokens, bleu_options)
              .value});
  impact.emplace_back(
      "chrF", ScorePair{chrf_corpus(sys.segments, ref_texts).value,
                        chrf_corpus(normalized, ref_texts).value});
  if (ingested_pre != nullptr && ingested_post != nullptr) {
    impact.emplace_back(ingested_pre->model_id(),
                        ScorePair{corpus_average(*ingested_pre, system_id).value,
                                  corpus_average(*ingested_post, system_id).value});
  }
  return impact;
}

}  // namespace mteval
