#include "snippetforge/language.hpp"

#include <cctype>
#include <stdexcept>

namespace snippetforge {

namespace {

std::vector<Language> make_registry() {
  std::vector<Language> langs;
  langs.push_back(Language{
      LanguageId::Python,
      "python",
      "#",
      std::nullopt,  // docstrings are string literals, not comments
      {"'", "\"", "'''", "\"\"\""},
  });
  langs.push_back(Language{
      LanguageId::Java,
      "java",
      "//",
      std::make_pair(std::string_view("/*"), std::string_view("*/")),
      {"\"", "'"},
  });
  langs.push_back(Language{
      LanguageId::Cpp,
      "cpp",
      "//",
      std::make_pair(std::string_view("/*"), std::string_view("*/")),
      {"\"", "'", "R\"("},
  });
  return langs;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const std::vector<Language>& all_languages() {
  static const std::vector<Language> registry = make_registry();
  return registry;
}

const Language& language_traits(LanguageId id) {
  for (const Language& l : all_languages()) {
    if (l.id == id) return l;
  }
  throw std::logic_error("unregistered language id");
}

std::optional<LanguageId> parse_language(std::string_view name) {
  const std::string lowered = ascii_lower(name);
  for (const Language& l : all_languages()) {
    if (lowered == l.name) return l.id;
  }
  if (lowered == "c++") return LanguageId::Cpp;
  return std::nullopt;
}

std::string_view language_name(LanguageId id) { return language_traits(id).name; }

char language_letter(LanguageId id) {
  switch (id) {
    case LanguageId::Python: return 'P';
    case LanguageId::Java: return 'J';
    case LanguageId::Cpp: return 'C';
  }
  return '?';
}

}  // namespace snippetforge
