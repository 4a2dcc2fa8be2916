#include <doctest.h>

#include "snippetforge/comment_lexer.hpp"

using namespace snippetforge;

namespace {

Program py(std::string text) { return Program{"p", LanguageId::Python, std::move(text)}; }
Program java(std::string text) { return Program{"p", LanguageId::Java, std::move(text)}; }
Program cpp(std::string text) { return Program{"p", LanguageId::Cpp, std::move(text)}; }

}  // namespace

TEST_CASE("normalize_comment strips markers, case and trailing punctuation") {
  CHECK(normalize_comment("//  Compute GCD. ") == "compute gcd");
  CHECK(normalize_comment("# Compute GCD.") == "compute gcd");
  CHECK(normalize_comment("/* Compute GCD. */") == "compute gcd");
  CHECK(normalize_comment("/* a\n * b\n */") == "a b");
  CHECK(normalize_comment("//// take   input ;;") == "take input");
  CHECK(normalize_comment("#") == "");
  CHECK(normalize_comment("/**/") == "");
  CHECK(normalize_comment("// Read N, then print N*2.") == "read n, then print n*2");
  CHECK(normalize_comment("// trailing mix .;:,") == "trailing mix");
  CHECK(normalize_comment("// a . .") == "a");
}

TEST_CASE("normalize_comment is idempotent") {
  const char* samples[] = {
      "//  Compute GCD. ", "# x += 1  # bump", "/* Multi\n line\n comment */",
      "// UPPER lower MiXeD", "## ## ##", "// ends with colon:",
  };
  for (const char* s : samples) {
    std::string once = normalize_comment(s);
    CHECK(normalize_comment(once) == once);
  }
}

TEST_CASE("comment_content keeps case and punctuation") {
  CHECK(comment_content("//  Compute GCD. ") == "Compute GCD.");
  CHECK(comment_content("/* Step 1:\n * Read N.\n */") == "Step 1: Read N.");
}

TEST_CASE("python scanner finds hash comments and skips strings") {
  auto spans = extract_comments(py("x = 1  # one\ns = '# not a comment'\ny = 2 # two\n"));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].raw_text == "# one");
  CHECK(spans[0].normalized_text == "one");
  CHECK(spans[1].raw_text == "# two");
  CHECK(spans[0].kind == CommentKind::Line);
}

TEST_CASE("python docstrings are not comments") {
  auto spans = extract_comments(py("def f():\n    '''doc # inside'''\n    return 1  # real\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "# real");
}

TEST_CASE("python escaped quote inside string") {
  auto spans = extract_comments(py("s = 'a\\'# b'\n# tail\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "# tail");
}

TEST_CASE("python unterminated string raises") {
  CHECK_THROWS_AS(extract_comments(py("s = 'oops\n")), LexError);
  CHECK_THROWS_AS(extract_comments(py("s = '''oops\n")), LexError);
}

TEST_CASE("java scanner handles line and block comments") {
  auto spans = extract_comments(java(
      "int a = 1; // first\nString s = \"// not\";\n/* second */ int b = 2;\n"));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].raw_text == "// first");
  CHECK(spans[1].raw_text == "/* second */");
  CHECK(spans[1].kind == CommentKind::Block);
}

TEST_CASE("java char literal does not open a string") {
  auto spans = extract_comments(java("char c = '\"'; // ok\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "// ok");
}

TEST_CASE("java unterminated block comment raises") {
  CHECK_THROWS_AS(extract_comments(java("int a; /* open\n")), LexError);
}

TEST_CASE("cpp raw strings hide comment markers") {
  auto spans = extract_comments(cpp("auto s = R\"(// no /* nope)\"; // yes\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "// yes");
}

TEST_CASE("cpp raw string with custom delimiter") {
  auto spans = extract_comments(cpp("auto s = R\"x()\" // still string)x\"; // real\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "// real");
}

TEST_CASE("cpp digit separators are not char literals") {
  auto spans = extract_comments(cpp("int n = 1'000'000; // big\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "// big");
}

TEST_CASE("cpp line comment splice continues across backslash newline") {
  auto spans = extract_comments(cpp("int a; // one \\\ntwo\nint b;\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "// one \\\ntwo");
  CHECK(spans[0].normalized_text == "one \\ two");
}

TEST_CASE("java has no line comment splice") {
  auto spans = extract_comments(java("int a; // one \\\nint b; // two\n"));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].raw_text == "// one \\");
}

TEST_CASE("line comment span excludes the terminator, CRLF included") {
  auto spans = extract_comments(py("# a\r\nx = 1\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].raw_text == "# a");
}

TEST_CASE("whitespace separated comments merge into one group") {
  auto spans = extract_comments(cpp("// a\n// b\nint x;\n/* c */\n\n// d\nint y;\n"));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].kind == CommentKind::MergedGroup);
  CHECK(spans[0].normalized_text == "a b");
  CHECK(spans[0].raw_text == "// a\n// b");
  CHECK(spans[1].normalized_text == "c d");
}

TEST_CASE("comments separated by code do not merge") {
  auto spans = extract_comments(py("# a\nx = 1\n# b\n"));
  REQUIRE(spans.size() == 2);
}

TEST_CASE("merged group joins only non-empty pieces") {
  auto spans = extract_comments(cpp("//\n// real\n//\nint x;\n"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].normalized_text == "real");
}

TEST_CASE("segmentation yields k comments and k plus one snippets") {
  auto ann = segment_by_comments(py("a = 1\n# first\nb = 2\n# second\nc = 3\n"));
  REQUIRE(ann.comment_count() == 2);
  REQUIRE(ann.snippets.size() == 3);
  CHECK(ann.snippet_text(0) == "a = 1\n");
  CHECK(ann.snippet_text(1) == "\nb = 2\n");
  CHECK(ann.snippet_text(2) == "\nc = 3\n");
  CHECK_FALSE(ann.trailing_empty);
}

TEST_CASE("segmentation with no comments gives one snippet") {
  auto ann = segment_by_comments(java("int a = 1;\n"));
  CHECK(ann.comment_count() == 0);
  REQUIRE(ann.snippets.size() == 1);
  CHECK(ann.snippet_text(0) == "int a = 1;\n");
}

TEST_CASE("trailing_empty set when nothing follows the last comment") {
  auto ann = segment_by_comments(py("a = 1\n# done\n"));
  CHECK(ann.comment_count() == 1);
  CHECK(ann.trailing_empty);
}

TEST_CASE("interior snippets are never whitespace-only") {
  auto ann = segment_by_comments(cpp("// a\n  \t\n// b\nint x;\n"));
  // the gap is whitespace, so the two comments merged into one group
  CHECK(ann.comment_count() == 1);
  for (std::size_t i = 1; i + 1 < ann.snippets.size(); ++i) {
    bool has_ink = false;
    for (char c : ann.snippet_text(i))
      if (!std::isspace(static_cast<unsigned char>(c))) has_ink = true;
    CHECK(has_ink);
  }
}

TEST_CASE("reconstruct is byte-exact") {
  const char* texts[] = {
      "a = 1\n# c1\nb = 2  # c2\n",
      "x\r\n# only\r\n",
      "no comments at all\n",
      "# leading\ncode\n# trailing\n",
  };
  for (const char* t : texts) {
    auto ann = segment_by_comments(py(t));
    CHECK(reconstruct(ann) == t);
  }
  auto annc = segment_by_comments(cpp("int a; /* x */ int b; // y\nR\"(z)\";\n"));
  CHECK(reconstruct(annc) == "int a; /* x */ int b; // y\nR\"(z)\";\n");
}

TEST_CASE("comment_signature lists normalized texts in order") {
  auto ann = segment_by_comments(py("# First.\nx=1\n# SECOND;\ny=2\n"));
  auto sig = comment_signature(ann);
  REQUIRE(sig.size() == 2);
  CHECK(sig[0] == "first");
  CHECK(sig[1] == "second");
}

TEST_CASE("strip_comments removes spans and keeps code bytes") {
  CHECK(strip_comments(py("x = 1  # gone\ny = 2\n")) == "x = 1  \ny = 2\n");
  CHECK(strip_comments(java("int a; /* gone */ int b;\n")) == "int a;  int b;\n");
  CHECK(strip_comments(cpp("auto s = R\"(// keep)\";\n")) == "auto s = R\"(// keep)\";\n");
}

TEST_CASE("lex error carries a byte offset") {
  try {
    extract_comments(java("int a;\n/* open\n"));
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.offset() == 7);
  }
}
