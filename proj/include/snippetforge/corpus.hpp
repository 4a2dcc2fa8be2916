#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "snippetforge/language.hpp"

namespace snippetforge {

/// One program in one language, identified by the problem it solves.
struct Program {
  std::string problem_id;
  LanguageId language = LanguageId::Python;
  std::string source_text;  // exact bytes, UTF-8
};

/// A problem's source program plus its target programs in other languages.
struct ProblemGroup {
  std::string problem_id;
  Program source;
  std::vector<Program> targets;  // at least one, no language repeated
};

/// One aligned snippet pair; the unit of snippet-alignment output.
/// comment is the normalized comment governing the pair, empty at index 0.
struct SnippetPair {
  std::string problem_id;
  int snippet_index = 0;
  LanguageId lang_a = LanguageId::Python;
  LanguageId lang_b = LanguageId::Java;
  std::string snippet_a;
  std::string snippet_b;
  std::string comment;

  bool operator==(const SnippetPair&) const = default;
};

/// Counters accumulated while loading a program-alignment corpus.
/// Conservation: sum of loaded group sizes + records_in_skipped_groups
/// == parsed_records, and parsed_records + malformed_lines +
/// unknown_language + duplicate_records == total_lines (blank lines aside).
struct PaLoadStats {
  std::size_t total_lines = 0;
  std::size_t blank_lines = 0;
  std::size_t malformed_lines = 0;
  std::size_t unknown_language = 0;
  std::size_t duplicate_records = 0;
  std::size_t parsed_records = 0;
  std::size_t groups_loaded = 0;
  std::size_t groups_skipped = 0;  // missing pivot or no targets
  std::size_t records_in_skipped_groups = 0;
};

/// Reads a JSONL file of {problem_id, language, source_text} records and
/// groups them by problem_id. The pivot language becomes each group's
/// source; groups lacking the pivot (or having no other language) are
/// skipped and counted, never fatal. Record-level defects are skipped
/// and counted likewise. Throws std::runtime_error only if the file
/// cannot be opened.
std::vector<ProblemGroup> load_pa_corpus(const std::filesystem::path& path,
                                         LanguageId pivot,
                                         PaLoadStats* stats = nullptr);

/// Writes snippet pairs as JSONL with fixed field order
/// (problem_id, snippet_index, lang_a, lang_b, comment, snippet_a,
/// snippet_b). Byte-deterministic for identical input; writes via a
/// temp file and atomic rename. Returns the number of lines written.
std::size_t write_sa_corpus(const std::vector<SnippetPair>& pairs,
                            const std::filesystem::path& path);

struct SaLoadStats {
  std::size_t total_lines = 0;
  std::size_t malformed_lines = 0;
};

/// Reads a snippet-alignment JSONL file back into pairs. Malformed lines
/// are skipped and counted.
std::vector<SnippetPair> load_sa_corpus(const std::filesystem::path& path,
                                        SaLoadStats* stats = nullptr);

}  // namespace snippetforge
