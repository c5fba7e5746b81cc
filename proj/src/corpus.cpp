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

#include "mteval/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mteval/error.hpp"
#include "mteval/utf8.hpp"

namespace mteval {

namespace {

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void check_lengths(const std::filesystem::path& file, std::size_t got,
                   std::size_t expected) {
  if (got != expected) {
    throw InputError("segment count mismatch: " + file.string() + " has " +
                     std::to_string(got) + " segments, expected " +
                     std::to_string(expected));
  }
}

// Splits "key: value" manifest lines; returns false for blanks/comments.
bool parse_manifest_line(const std::string& raw, std::string* key,
                         std::string* value) {
  std::string line = raw;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::size_t hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  std::size_t start = line.find_first_not_of(" \t");
  if (start == std::string::npos) return false;
  std::size_t colon = line.find(':', start);
  if (colon == std::string::npos) {
    throw InputError("manifest line without ':' separator: " + raw);
  }
  *key = line.substr(start, colon - start);
  while (!key->empty() && (key->back() == ' ' || key->back() == '\t')) {
    key->pop_back();
  }
  std::size_t vstart = line.find_first_not_of(" \t", colon + 1);
  std::size_t vend = line.find_last_not_of(" \t");
  *value = vstart == std::string::npos
               ? std::string()
               : line.substr(vstart, vend - vstart + 1);
  return true;
}

std::vector<std::string> split_fields(const std::string& value) {
  std::vector<std::string> fields;
  std::istringstream in(value);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

}  // namespace

std::string EvaluationCorpus::source_language() const {
  const std::size_t dash = direction.find('-');
  return dash == std::string::npos ? direction : direction.substr(0, dash);
}

std::string EvaluationCorpus::target_language() const {
  const std::size_t dash = direction.find('-');
  return dash == std::string::npos ? std::string() : direction.substr(dash + 1);
}

bool EvaluationCorpus::has_system(std::string_view system_id) const {
  for (const SystemEntry& sys : systems) {
    if (sys.system_id == system_id) return true;
  }
  return false;
}

const SystemEntry& EvaluationCorpus::system(std::string_view system_id) const {
  return systems[system_index(system_id)];
}

std::size_t EvaluationCorpus::system_index(std::string_view system_id) const {
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (systems[i].system_id == system_id) return i;
  }
  throw InputError("unknown system: " + std::string(system_id));
}

std::vector<std::string> EvaluationCorpus::segment_references(
    std::size_t segment) const {
  std::vector<std::string> refs;
  refs.reserve(references.size());
  for (const auto& ref : references) refs.push_back(ref[segment]);
  return refs;
}

std::vector<std::string> read_segment_file(const std::filesystem::path& path) {
  const std::string bytes = read_file_bytes(path);
  std::size_t bad_offset = 0;
  if (!validate_utf8(bytes, &bad_offset)) {
    throw InputError("invalid UTF-8 in " + path.string() + " at byte offset " +
                     std::to_string(bad_offset));
  }
  std::vector<std::string> segments;
  std::string current;
  for (char c : bytes) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      segments.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) {
    if (current.back() == '\r') current.pop_back();
    segments.push_back(std::move(current));
  } else if (!segments.empty() && segments.back().empty()) {
    // Distinguishes "missing final newline" from a stray blank final line,
    // which is almost always an off-by-one in the producing tool.
    throw InputError("trailing empty line in " + path.string());
  }
  return segments;
}

void write_segment_file(const std::filesystem::path& path,
                        const std::vector<std::string>& segments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write file: " + path.string());
  }
  for (const std::string& segment : segments) {
    out << segment << '\n';
  }
}

EvaluationCorpus load_corpus(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw InputError("cannot open manifest: " + manifest_path.string());
  }
  const std::filesystem::path base = manifest_path.parent_path();

  EvaluationCorpus corpus;
  std::filesystem::path source_path;
  std::vector<std::filesystem::path> reference_paths;
  std::vector<std::filesystem::path> excluded_reference_paths;
  struct SystemDecl {
    std::string id;
    bool constrained;
    std::filesystem::path path;
  };
  std::vector<SystemDecl> system_decls;

  std::string line, key, value;
  while (std::getline(in, line)) {
    if (!parse_manifest_line(line, &key, &value)) continue;
    if (key == "direction") {
      corpus.direction = value;
    } else if (key == "source") {
      source_path = base / value;
    } else if (key == "reference") {
      reference_paths.push_back(base / value);
    } else if (key == "excluded_reference") {
      excluded_reference_paths.push_back(base / value);
    } else if (key == "system") {
      const std::vector<std::string> fields = split_fields(value);
      if (fields.size() != 3) {
        throw InputError(
            "system entry must be '<id> <constrained|unconstrained> <path>': " +
            line);
      }
      bool constrained;
      if (fields[1] == "constrained") {
        constrained = true;
      } else if (fields[1] == "unconstrained") {
        constrained = false;
      } else {
        throw InputError("bad constrained flag '" + fields[1] + "' in: " + line);
      }
      system_decls.push_back({fields[0], constrained, base / fields[2]});
    } else {
      throw InputError("unknown manifest key: " + key);
    }
  }

  if (corpus.direction.empty()) {
    throw InputError("manifest missing 'direction'");
  }
  if (source_path.empty()) {
    throw InputError("manifest missing 'source'");
  }
  if (reference_paths.empty()) {
    throw InputError("manifest declares no reference");
  }

  std::set<std::string> seen_ids;
  for (const SystemDecl& decl : system_decls) {
    if (!seen_ids.insert(decl.id).second) {
      throw InputError("duplicate system id: " + decl.id);
    }
  }

  corpus.sources = read_segment_file(source_path);
  if (corpus.sources.empty()) {
    throw InputError("source file is empty: " + source_path.string());
  }
  const std::size_t n = corpus.sources.size();

  for (const auto& path : reference_paths) {
    auto segments = read_segment_file(path);
    check_lengths(path, segments.size(), n);
    corpus.references.push_back(std::move(segments));
  }
  for (const auto& path : excluded_reference_paths) {
    // Validated for alignment like any reference, then dropped.
    check_lengths(path, read_segment_file(path).size(), n);
  }
  for (const SystemDecl& decl : system_decls) {
    auto segments = read_segment_file(decl.path);
    check_lengths(decl.path, segments.size(), n);
    corpus.systems.push_back({decl.id, decl.constrained, std::move(segments)});
  }
  return corpus;
}

void write_corpus(const EvaluationCorpus& corpus,
                  const std::filesystem::path& dir,
                  const std::string& manifest_name) {
  std::filesystem::create_directories(dir);
  write_segment_file(dir / "source.txt", corpus.sources);
  std::ofstream manifest(dir / manifest_name);
  if (!manifest) {
    throw InputError("cannot write manifest in " + dir.string());
  }
  manifest << "direction: " << corpus.direction << '\n';
  manifest << "source: source.txt\n";
  for (std::size_t k = 0; k < corpus.references.size(); ++k) {
    const std::string name = "reference." + std::to_string(k) + ".txt";
    write_segment_file(dir / name, corpus.references[k]);
    manifest << "reference: " << name << '\n';
  }
  for (const SystemEntry& sys : corpus.systems) {
    const std::string name = "system." + sys.system_id + ".txt";
    write_segment_file(dir / name, sys.segments);
    manifest << "system: " << sys.system_id << ' '
             << (sys.constrained ? "constrained" : "unconstrained") << ' '
             << name << '\n';
  }
}

std::size_t segment_count(const EvaluationCorpus& corpus) {
  return corpus.segment_count();
}

}  // namespace mteval
