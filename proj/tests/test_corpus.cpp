#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "snippetforge/corpus.hpp"
#include "support/fixtures.hpp"

using namespace snippetforge;
using fixtures::TempDir;
using fixtures::read_text;
using fixtures::write_text;

namespace {

SnippetPair make_pair(const std::string& id, int index) {
  SnippetPair p;
  p.problem_id = id;
  p.snippet_index = index;
  p.lang_a = LanguageId::Cpp;
  p.lang_b = LanguageId::Python;
  p.comment = "read input";
  p.snippet_a = "int n;\nstd::cin >> n;\n";
  p.snippet_b = "n = int(input())\n";
  return p;
}

}  // namespace

TEST_CASE("pa corpus: grouping, pivot selection, file order") {
  TempDir dir("corpus");
  write_text(dir.file("pa.jsonl"),
             R"({"problem_id": "p2", "language": "java", "source_text": "int x = 1;"})"
             "\n"
             R"({"problem_id": "p1", "language": "python", "source_text": "x = 1"})"
             "\n"
             R"({"problem_id": "p2", "language": "python", "source_text": "x = 2"})"
             "\n"
             R"({"problem_id": "p1", "language": "cpp", "source_text": "int x = 1;"})"
             "\n"
             R"({"problem_id": "p2", "language": "cpp", "source_text": "int x = 2;"})"
             "\n");

  PaLoadStats stats;
  const auto groups = load_pa_corpus(dir.file("pa.jsonl"), LanguageId::Python, &stats);

  REQUIRE(groups.size() == 2);
  // first-appearance order of problem ids, not lexicographic
  CHECK(groups[0].problem_id == "p2");
  CHECK(groups[1].problem_id == "p1");

  CHECK(groups[0].source.language == LanguageId::Python);
  CHECK(groups[0].source.source_text == "x = 2");
  REQUIRE(groups[0].targets.size() == 2);
  CHECK(groups[0].targets[0].language == LanguageId::Java);  // file order kept
  CHECK(groups[0].targets[1].language == LanguageId::Cpp);

  CHECK(stats.total_lines == 5);
  CHECK(stats.parsed_records == 5);
  CHECK(stats.groups_loaded == 2);
  CHECK(stats.groups_skipped == 0);
}

TEST_CASE("pa corpus: defects are counted and skipped, never fatal") {
  TempDir dir("corpus");
  write_text(dir.file("pa.jsonl"),
             "not json at all\n"
             "\n"
             R"({"problem_id": "p1", "language": "python", "source_text": "x = 1"})"
             "\n"
             R"({"problem_id": "p1", "language": "rust", "source_text": "let x = 1;"})"
             "\n"
             R"({"problem_id": "p1", "language": "python", "source_text": "x = 9"})"
             "\n"
             R"({"problem_id": "p1", "language": "java"})"
             "\n"
             R"({"problem_id": "p1", "language": "java", "source_text": ""})"
             "\n"
             R"({"problem_id": "p1", "language": "java", "source_text": "int x;"})"
             "\n"
             R"({"problem_id": "lonely", "language": "python", "source_text": "y = 2"})"
             "\n"
             R"({"problem_id": "nopivot", "language": "java", "source_text": "int y;"})"
             "\n");

  PaLoadStats stats;
  const auto groups = load_pa_corpus(dir.file("pa.jsonl"), LanguageId::Python, &stats);

  REQUIRE(groups.size() == 1);
  CHECK(groups[0].problem_id == "p1");
  CHECK(groups[0].source.source_text == "x = 1");  // first occurrence wins over duplicate
  REQUIRE(groups[0].targets.size() == 1);
  CHECK(groups[0].targets[0].source_text == "int x;");

  CHECK(stats.total_lines == 10);
  CHECK(stats.blank_lines == 1);
  CHECK(stats.malformed_lines == 3);  // bad json, missing field, empty source_text
  CHECK(stats.unknown_language == 1);
  CHECK(stats.duplicate_records == 1);
  CHECK(stats.parsed_records == 4);
  CHECK(stats.groups_loaded == 1);
  CHECK(stats.groups_skipped == 2);  // pivot-only group and pivot-less group
  CHECK(stats.records_in_skipped_groups == 2);
  // conservation across the two levels of accounting
  CHECK(stats.parsed_records ==
        groups[0].targets.size() + 1 + stats.records_in_skipped_groups);
  CHECK(stats.total_lines == stats.blank_lines + stats.malformed_lines +
                                 stats.unknown_language + stats.duplicate_records +
                                 stats.parsed_records);
}

TEST_CASE("pa corpus: missing file throws, CRLF lines parse") {
  TempDir dir("corpus");
  CHECK_THROWS_AS(load_pa_corpus(dir.file("absent.jsonl"), LanguageId::Python),
                  std::runtime_error);

  write_text(dir.file("crlf.jsonl"),
             R"({"problem_id": "p", "language": "python", "source_text": "x = 1"})"
             "\r\n"
             R"({"problem_id": "p", "language": "java", "source_text": "int x;"})"
             "\r\n");
  PaLoadStats stats;
  const auto groups = load_pa_corpus(dir.file("crlf.jsonl"), LanguageId::Python, &stats);
  CHECK(groups.size() == 1);
  CHECK(stats.malformed_lines == 0);
}

TEST_CASE("sa corpus: fixed field order, trailing newline, atomic write") {
  TempDir dir("corpus");
  const std::vector<SnippetPair> pairs{make_pair("p1", 1), make_pair("p1", 2)};

  const auto path = dir.file("sa.jsonl");
  CHECK(write_sa_corpus(pairs, path) == 2);

  const std::string text = read_text(path);
  const std::string prefix =
      R"({"problem_id":"p1","snippet_index":1,"lang_a":"cpp","lang_b":"python","comment":)";
  CHECK(text.substr(0, prefix.size()) == prefix);
  CHECK(text.back() == '\n');
  CHECK_FALSE(std::filesystem::exists(dir.file("sa.jsonl.tmp")));

  // byte-determinism across writes
  write_sa_corpus(pairs, dir.file("sa2.jsonl"));
  CHECK(read_text(dir.file("sa2.jsonl")) == text);

  // overwrite replaces content wholesale
  write_sa_corpus({make_pair("p9", 0)}, path);
  CHECK(read_text(path).find("p9") != std::string::npos);
  CHECK(read_text(path).find("p1") == std::string::npos);
}

TEST_CASE("sa corpus: round trip preserves every field") {
  TempDir dir("corpus");
  std::vector<SnippetPair> pairs{make_pair("p1", 0), make_pair("p2", 3)};
  pairs[0].comment = "";
  pairs[0].snippet_b = "line with \"quotes\" and\nnewline\n";

  write_sa_corpus(pairs, dir.file("sa.jsonl"));
  SaLoadStats stats;
  const auto loaded = load_sa_corpus(dir.file("sa.jsonl"), &stats);

  CHECK(stats.total_lines == 2);
  CHECK(stats.malformed_lines == 0);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0] == pairs[0]);
  CHECK(loaded[1] == pairs[1]);
}

TEST_CASE("sa corpus: malformed records are counted and skipped") {
  TempDir dir("corpus");
  write_text(dir.file("sa.jsonl"),
             R"({"problem_id":"p","snippet_index":1,"lang_a":"cpp","lang_b":"java","comment":"c","snippet_a":"a","snippet_b":"b"})"
             "\n"
             "garbage\n"
             R"({"problem_id":42,"snippet_index":1,"lang_a":"cpp","lang_b":"java","comment":"c","snippet_a":"a","snippet_b":"b"})"
             "\n"
             R"({"problem_id":"p","snippet_index":"one","lang_a":"cpp","lang_b":"java","comment":"c","snippet_a":"a","snippet_b":"b"})"
             "\n"
             R"({"problem_id":"p","snippet_index":2,"lang_a":"cpp","lang_b":"ruby","comment":"c","snippet_a":"a","snippet_b":"b"})"
             "\n");

  SaLoadStats stats;
  const auto loaded = load_sa_corpus(dir.file("sa.jsonl"), &stats);
  CHECK(loaded.size() == 1);
  CHECK(stats.total_lines == 5);
  CHECK(stats.malformed_lines == 4);
}
