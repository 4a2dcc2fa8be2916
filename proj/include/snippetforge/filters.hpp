#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snippetforge/comment_lexer.hpp"
#include "snippetforge/language.hpp"

namespace snippetforge {

// Model output contained no fenced code block and does not look like bare code.
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class UselessReason { ImportOnly, WhitespaceOnly, BoilerplateOnly };

struct FilterVerdict {
  bool accepted = true;
  std::optional<UselessReason> reason;  // present iff !accepted
};

struct AlignmentMismatch {
  std::size_t index = 0;  // first differing position; min(k_a, k_b) on length mismatch
  std::string left;       // normalized comment of a at index ("" when absent)
  std::string right;      // normalized comment of b at index ("" when absent)
};

// Per-language snippet-usefulness rules. `import_prefixes` classify a trimmed
// line as an import/include; a trimmed line made only of {}();, characters is
// always boilerplate, and `boilerplate_lines` adds exact-match extras.
struct LanguageFilterRules {
  std::vector<std::string> import_prefixes;
  std::vector<std::string> boilerplate_lines;
};

struct FilterConfig {
  LanguageFilterRules python;
  LanguageFilterRules java;
  LanguageFilterRules cpp;

  const LanguageFilterRules& rules_for(LanguageId id) const;
  static FilterConfig defaults();
  // Merges {"python": {"import_prefixes": [...], "boilerplate_lines": [...]}, ...}
  // into the defaults; absent keys keep their default lists.
  static FilterConfig from_json(const std::string& json_text);
};

// Returns the body of the first fenced code block (``` fences, language tag
// ignored, CRLF tolerated). Without any fence, returns the whole output when
// its first non-blank line looks like code; prose raises ExtractionError.
std::string extract_code_block(std::string_view llm_output);

// ok == nullopt; otherwise the first index where the normalized comment
// sequences differ, with a length mismatch reported at min(k_a, k_b).
std::optional<AlignmentMismatch> validate_comment_alignment(const AnnotatedProgram& a,
                                                            const AnnotatedProgram& b);

// Rejects whitespace-only snippets and snippets whose every non-blank line is
// an import/include or boilerplate. Reason is ImportOnly when at least one
// import line is present, else BoilerplateOnly.
FilterVerdict is_useless_snippet(std::string_view snippet, LanguageId language,
                                 const FilterConfig& config = FilterConfig::defaults());

}  // namespace snippetforge
