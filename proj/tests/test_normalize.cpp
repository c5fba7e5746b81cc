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

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "mteval/corpus.hpp"

using namespace mteval;
namespace fs = std::filesystem;

namespace {

NormalizationConfig config_for(const std::string& lang) {
  NormalizationConfig config;
  config.target_language = lang;
  return config;
}

}  // namespace

TEST_CASE("unicode punctuation table basics") {
  CHECK(replace_unicode_punctuation("…") == "...");
  CHECK(replace_unicode_punctuation("，") == ",");
  CHECK(replace_unicode_punctuation("plain ASCII sentence.") ==
        "plain ASCII sentence.");
  CHECK(replace_unicode_punctuation("你好。") == "你好. ");
  CHECK(replace_unicode_punctuation("１２３") == "\"23");  // script quirk
  CHECK(replace_unicode_punctuation("５％") == "5%");
}

TEST_CASE("normalize_text full chain examples") {
  CHECK(normalize_text("…", config_for("en")) == "...");
  CHECK(normalize_text("，", config_for("en")) == ",");
  CHECK(normalize_text("plain ASCII sentence.", config_for("en")) ==
        "plain ASCII sentence.");
  CHECK(normalize_text("zero​width", config_for("en")) == "zero width");
  CHECK(normalize_text("tab\there", config_for("en")) == "tab here");
}

TEST_CASE("language-dependent quote handling") {
  // en: punctuation after the quote moves inside
  CHECK(normalize_punctuation("said \". x", "en") == "said .\" x");
  CHECK(normalize_punctuation("\"fin.\" x", "en") == "\"fin.\" x");
  // fr/de: period before closing quote moves outside
  CHECK(normalize_punctuation("\"fin.\" x", "fr") == "\"fin\". x");
  CHECK(normalize_punctuation("\"fin.\"", "fr") == "\"fin\".");
  // cs leaves both alone
  CHECK(normalize_punctuation("\"fin.\" x", "cs") == "\"fin.\" x");
  // digit grouping differs: en gets '.', fr gets ','
  CHECK(normalize_punctuation("25 000", "en") == "25.000");
  CHECK(normalize_punctuation("25 000", "fr") == "25,000");
}

TEST_CASE("stage subsets apply in order") {
  NormalizationConfig only_strip;
  only_strip.stages = {NormalizeStage::kStripNonPrint};
  CHECK(normalize_text("a​b…", only_strip) == "a b…");

  NormalizationConfig only_unicode;
  only_unicode.stages = {NormalizeStage::kUnicodePunct};
  CHECK(normalize_text("a​b…", only_unicode) == "a​b...");
}

TEST_CASE("port is byte-identical to the perl chain goldens") {
  const fs::path data(MTEVAL_TEST_DATA_DIR);
  const std::vector<std::string> sample =
      read_segment_file(data / "normalize" / "sample.txt");
  REQUIRE(sample.size() == 200);
  for (const std::string lang : {"en", "fr", "de", "cs"}) {
    const std::vector<std::string> golden =
        read_segment_file(data / "normalize" / ("golden." + lang + ".txt"));
    REQUIRE(golden.size() == sample.size());
    const NormalizationConfig config = config_for(lang);
    int mismatches = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const std::string normalized = normalize_text(sample[i], config);
      if (normalized != golden[i]) {
        ++mismatches;
        if (mismatches <= 3) {
          CAPTURE(lang);
          CAPTURE(i);
          CAPTURE(sample[i]);
          CAPTURE(normalized);
          CAPTURE(golden[i]);
          CHECK(normalized == golden[i]);
        }
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("normalization is idempotent on the committed sample") {
  const fs::path data(MTEVAL_TEST_DATA_DIR);
  const std::vector<std::string> sample =
      read_segment_file(data / "normalize" / "sample.txt");
  for (const std::string lang : {"en", "fr", "de", "cs"}) {
    const NormalizationConfig config = config_for(lang);
    for (const std::string& line : sample) {
      const std::string once = normalize_text(line, config);
      CHECK(normalize_text(once, config) == once);
    }
  }
}

// Dense punctuation soup: guillemets, NBSP forms, quote styles, fullwidth
// blocks and format characters in adversarial adjacency.
TEST_CASE("port matches the perl chain on the torture fixture") {
  const fs::path data(MTEVAL_TEST_DATA_DIR);
  const std::vector<std::string> sample =
      read_segment_file(data / "normalize" / "torture.txt");
  REQUIRE(sample.size() == 300);
  for (const std::string lang : {"en", "fr"}) {
    const std::vector<std::string> golden = read_segment_file(
        data / "normalize" / ("torture.golden." + lang + ".txt"));
    const NormalizationConfig config = config_for(lang);
    int mismatches = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (normalize_text(sample[i], config) != golden[i]) ++mismatches;
    }
    CAPTURE(lang);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("en and fr configs disagree somewhere on the sample") {
  const fs::path data(MTEVAL_TEST_DATA_DIR);
  const std::vector<std::string> sample =
      read_segment_file(data / "normalize" / "sample.txt");
  int differing = 0;
  for (const std::string& line : sample) {
    if (normalize_text(line, config_for("en")) !=
        normalize_text(line, config_for("fr"))) {
      ++differing;
    }
  }
  CHECK(differing > 0);
}

TEST_CASE("cjk targets are flagged as unreliable") {
  CHECK(normalization_unreliable_for("zh"));
  CHECK(normalization_unreliable_for("ja"));
  CHECK_FALSE(normalization_unreliable_for("en"));
  CHECK_FALSE(normalization_unreliable_for("cs"));
}

TEST_CASE("normalization impact scores pre and post") {
  const fs::path dir = fs::temp_directory_path() /
                       ("mteval_norm_impact_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "src.txt") << "s1\ns2\n";
    std::ofstream(dir / "ref.txt") << "wait... what\nall plain here\n";
    // system uses a unicode ellipsis where the reference has dots
    std::ofstream out(dir / "a.txt", std::ios::binary);
    out << "wait… what\nall plain here\n";
  }
  {
    std::ofstream(dir / "manifest.txt")
        << "direction: cs-en\nsource: src.txt\nreference: ref.txt\n"
           "system: A constrained a.txt\n";
  }
  const EvaluationCorpus corpus = load_corpus(dir / "manifest.txt");
  const auto impact =
      normalization_impact(corpus, "A", config_for("en"), nullptr, nullptr);
  REQUIRE(impact.size() == 2);
  CHECK(impact[0].first == "BLEU");
  CHECK(impact[1].first == "chrF");
  // normalization rewrites the ellipsis into the reference's form
  CHECK(impact[0].second.post >= impact[0].second.pre);
  CHECK(impact[1].second.post > impact[1].second.pre);
  CHECK(impact[1].second.post == 100.0);

  // an already-normalized system moves nowhere
  const auto plain = normalization_impact(corpus, "A", config_for("en"),
                                          nullptr, nullptr);
  CHECK(plain[0].second.post == impact[0].second.post);
  fs::remove_all(dir);
}
