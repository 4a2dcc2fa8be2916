#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace snippetforge {

enum class LanguageId { Python, Java, Cpp };

/// Lexical traits of one supported language. The lexer keys its scanning
/// rules off these; string_delimiters lists the literal-opening tokens the
/// scanner recognizes for the language.
struct Language {
  LanguageId id;
  std::string_view name;                 // wire tag: "python" | "java" | "cpp"
  std::string_view line_comment_marker;  // "#" or "//"
  std::optional<std::pair<std::string_view, std::string_view>> block_comment_delims;
  std::vector<std::string_view> string_delimiters;
};

const Language& language_traits(LanguageId id);
const std::vector<Language>& all_languages();

/// Parses a wire tag ("python", "java", "cpp"); case-insensitive.
std::optional<LanguageId> parse_language(std::string_view name);
std::string_view language_name(LanguageId id);

/// Single-letter code used in evaluation table headers: P, J, C.
char language_letter(LanguageId id);

}  // namespace snippetforge
