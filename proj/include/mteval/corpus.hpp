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

#ifndef MTEVAL_CORPUS_HPP_
#define MTEVAL_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mteval {

struct SystemEntry {
  std::string system_id;
  bool constrained = false;
  std::vector<std::string> segments;

  bool operator==(const SystemEntry&) const = default;
};

// Line-aligned evaluation data for one translation direction.  All segment
// lists (sources, every reference, every system) have the same length.
// Immutable after loading; concurrent reads are safe.
struct EvaluationCorpus {
  std::string direction;  // e.g. "cs-en"
  std::vector<std::string> sources;
  std::vector<std::vector<std::string>> references;  // references[k][segment]
  std::vector<SystemEntry> systems;

  std::size_t segment_count() const { return sources.size(); }
  std::string source_language() const;
  std::string target_language() const;

  bool has_system(std::string_view system_id) const;
  // Throws InputError for unknown ids.
  const SystemEntry& system(std::string_view system_id) const;
  std::size_t system_index(std::string_view system_id) const;

  // References for one segment, in manifest order.
  std::vector<std::string> segment_references(std::size_t segment) const;

  bool operator==(const EvaluationCorpus&) const = default;
};

// Reads one segment per line (LF endings; a trailing CR per line is
// stripped; the final newline is optional but a trailing empty line is an
// error).  Validates UTF-8 and reports the byte offset of bad input.
std::vector<std::string> read_segment_file(const std::filesystem::path& path);

// One segment per line, LF endings, trailing newline included.
void write_segment_file(const std::filesystem::path& path,
                        const std::vector<std::string>& segments);

// Loads a corpus from a manifest.  Manifest grammar (UTF-8, one entry per
// line, '#' starts a comment):
//
//   direction: cs-en
//   source: path/to/src.txt
//   reference: path/to/ref.A.txt          # repeatable, ordered
//   excluded_reference: path/to/stud.txt  # validated, not scored
//   system: <id> <constrained|unconstrained> <path>
//
// Paths are resolved relative to the manifest's directory.  Every
// referenced file must have the same number of lines as the source.
EvaluationCorpus load_corpus(const std::filesystem::path& manifest_path);

// Writes corpus files plus a manifest into `dir`; loading the manifest
// back yields an equal corpus.
void write_corpus(const EvaluationCorpus& corpus,
                  const std::filesystem::path& dir,
                  const std::string& manifest_name = "manifest.txt");

std::size_t segment_count(const EvaluationCorpus& corpus);

}  // namespace mteval

#endif  // MTEVAL_CORPUS_HPP_
