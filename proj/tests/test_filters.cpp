#include <doctest.h>

#include <string>

#include "snippetforge/filters.hpp"
#include "support/filter_cases.hpp"

using namespace snippetforge;

namespace {

AnnotatedProgram annotate_python(const std::string& text) {
  Program p;
  p.problem_id = "t";
  p.language = LanguageId::Python;
  p.source_text = text;
  return segment_by_comments(p);
}

}  // namespace

TEST_CASE("extract_code_block: fenced replies") {
  CHECK(extract_code_block("```python\nx = 1\ny = 2\n```\n") == "x = 1\ny = 2\n");
  CHECK(extract_code_block("```\nx = 1\n```") == "x = 1\n");

  // prose around the fence is discarded
  CHECK(extract_code_block("Here is the code:\n```java\nint x;\n```\nHope that helps!") ==
        "int x;\n");

  // unclosed fence runs to the end of the output
  CHECK(extract_code_block("```cpp\nint a;\nint b;\n") == "int a;\nint b;\n");

  // only the first fenced block counts
  CHECK(extract_code_block("```\nfirst\n```\n```\nsecond\n```\n") == "first\n");

  // CRLF output, indented fences
  CHECK(extract_code_block("```python\r\nx = 1\r\n```\r\n") == "x = 1\n");
  CHECK(extract_code_block("  ```\nx = 1\n  ```\n") == "x = 1\n");
}

TEST_CASE("extract_code_block: fence-less replies") {
  // bare code passes the heuristic
  CHECK(extract_code_block("x = 1\ny = 2\n") == "x = 1\ny = 2\n");
  CHECK(extract_code_block("def f(a):\n    return a\n") == "def f(a):\n    return a\n");
  CHECK(extract_code_block("#include <vector>\nint main() {}\n") ==
        "#include <vector>\nint main() {}\n");

  // prose does not
  CHECK_THROWS_AS(extract_code_block("Sure! I'd be happy to help."), ExtractionError);
  CHECK_THROWS_AS(extract_code_block("I cannot insert comments into this program."),
                  ExtractionError);
  CHECK_THROWS_AS(extract_code_block(""), ExtractionError);
  CHECK_THROWS_AS(extract_code_block("   \n  \n"), ExtractionError);
}

TEST_CASE("validate_comment_alignment") {
  const auto a = annotate_python("s0\n# read input\ns1\n# Solve.\ns2\n");
  const auto b = annotate_python("t0\n#    READ input\nt1\n# solve\nt2\n");
  CHECK_FALSE(validate_comment_alignment(a, b).has_value());  // normalization absorbs the noise

  const auto c = annotate_python("s0\n# read input\ns1\n# print answer\ns2\n");
  const auto m1 = validate_comment_alignment(a, c);
  REQUIRE(m1.has_value());
  CHECK(m1->index == 1);
  CHECK(m1->left == "solve");
  CHECK(m1->right == "print answer");

  // length mismatch reported at the first absent position
  const auto d = annotate_python("s0\n# read input\ns1\n");
  const auto m2 = validate_comment_alignment(a, d);
  REQUIRE(m2.has_value());
  CHECK(m2->index == 1);
  CHECK(m2->left == "solve");
  CHECK(m2->right == "");

  const auto m3 = validate_comment_alignment(d, a);  // symmetric orientation
  REQUIRE(m3.has_value());
  CHECK(m3->index == 1);
  CHECK(m3->left == "");
  CHECK(m3->right == "solve");
}

TEST_CASE("is_useless_snippet: hand-labeled table") {
  const FilterConfig config = FilterConfig::defaults();
  for (const auto& c : filter_cases::kCases) {
    INFO(c.label);
    const FilterVerdict v = is_useless_snippet(c.snippet, c.language, config);
    CHECK(v.accepted == c.useful);
    if (!c.useful) {
      REQUIRE(v.reason.has_value());
      CHECK(*v.reason == c.reason);
    } else {
      CHECK_FALSE(v.reason.has_value());
    }
  }
}

TEST_CASE("is_useless_snippet: verdict is blank-line invariant") {
  for (const auto& c : filter_cases::kCases) {
    INFO(c.label);
    const std::string padded = "\n  \n" + std::string(c.snippet) + "\n\t\n";
    CHECK(is_useless_snippet(padded, c.language).accepted ==
          is_useless_snippet(c.snippet, c.language).accepted);
  }
}

TEST_CASE("filter config: json overrides merge into defaults") {
  const FilterConfig c = FilterConfig::from_json(R"({
    "java": {"boilerplate_lines": ["public static void main(String[] args) {"]},
    "python": {"import_prefixes": ["import "]}
  })");

  // java gains a boilerplate line, keeps its default import prefixes
  CHECK_FALSE(
      is_useless_snippet("public static void main(String[] args) {\n", LanguageId::Java, c)
          .accepted);
  CHECK_FALSE(is_useless_snippet("package demo;\n", LanguageId::Java, c).accepted);

  // python's prefix list was replaced: "from " no longer counts as an import
  CHECK(is_useless_snippet("from a import b\n", LanguageId::Python, c).accepted);
  CHECK_FALSE(is_useless_snippet("import os\n", LanguageId::Python, c).accepted);

  // cpp untouched
  CHECK_FALSE(is_useless_snippet("#include <set>\n", LanguageId::Cpp, c).accepted);

  CHECK_THROWS(FilterConfig::from_json("not json"));
}

TEST_CASE("is_useless_snippet: reason precedence") {
  // imports outrank boilerplate when both are present
  const FilterVerdict v = is_useless_snippet("import os\n}\n", LanguageId::Python);
  CHECK_FALSE(v.accepted);
  CHECK(*v.reason == UselessReason::ImportOnly);

  // a single genuine line rescues anything
  CHECK(is_useless_snippet("import os\n}\nx = f()\n", LanguageId::Python).accepted);
}
