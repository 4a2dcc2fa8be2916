#include "snippetforge/filters.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace snippetforge {

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  return lines;
}

bool is_fence_line(std::string_view line) { return trim(line).substr(0, 3) == "```"; }

// Heuristic for fence-less replies: the first non-blank line must carry some
// code-shaped character or start like a declaration, otherwise it is prose.
bool looks_like_code(std::string_view line) {
  static constexpr std::string_view starters[] = {
      "import ",  "from ",   "def ",     "class ",  "public ",   "private ", "protected ",
      "static ",  "void ",   "int ",     "long ",   "double ",   "float ",   "bool ",
      "char ",    "auto ",   "using ",   "template", "#include", "#define",  "package ",
      "return ",  "for ",    "while ",   "if ",     "print",     "std::",    "namespace ",
  };
  for (std::string_view s : starters)
    if (line.substr(0, s.size()) == s) return true;
  for (char c : line)
    if (c == '{' || c == '}' || c == ';' || c == '=' || c == '(' || c == ')' || c == '[' ||
        c == ']' || c == '#' || c == '<' || c == '>')
      return true;
  return false;
}

bool punct_only_line(std::string_view trimmed) {
  if (trimmed.empty()) return false;
  bool structural = false;
  for (char c : trimmed) {
    if (c == '{' || c == '}' || c == ';') structural = true;
    else if (c != '(' && c != ')' && c != ',')
      return false;
  }
  return structural;
}

}  // namespace

const LanguageFilterRules& FilterConfig::rules_for(LanguageId id) const {
  switch (id) {
    case LanguageId::Python: return python;
    case LanguageId::Java: return java;
    case LanguageId::Cpp: return cpp;
  }
  return python;  // unreachable
}

FilterConfig FilterConfig::defaults() {
  FilterConfig c;
  c.python.import_prefixes = {"import ", "from "};
  c.java.import_prefixes = {"import ", "package "};
  c.cpp.import_prefixes = {"#include", "using ", "#define"};
  return c;
}

FilterConfig FilterConfig::from_json(const std::string& json_text) {
  FilterConfig c = defaults();
  nlohmann::json j = nlohmann::json::parse(json_text);
  auto merge = [&j](const char* key, LanguageFilterRules& rules) {
    if (!j.contains(key)) return;
    const nlohmann::json& sect = j.at(key);
    if (sect.contains("import_prefixes"))
      rules.import_prefixes = sect.at("import_prefixes").get<std::vector<std::string>>();
    if (sect.contains("boilerplate_lines"))
      rules.boilerplate_lines = sect.at("boilerplate_lines").get<std::vector<std::string>>();
  };
  merge("python", c.python);
  merge("java", c.java);
  merge("cpp", c.cpp);
  return c;
}

std::string extract_code_block(std::string_view llm_output) {
  const std::vector<std::string_view> lines = split_lines(llm_output);

  std::size_t open = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_fence_line(lines[i])) {
      open = i;
      break;
    }
  }

  if (open == lines.size()) {
    for (std::string_view line : lines) {
      std::string_view t = trim(line);
      if (t.empty()) continue;
      if (looks_like_code(t)) return std::string(llm_output);
      throw ExtractionError("no code fence and output does not look like code");
    }
    throw ExtractionError("empty model output");
  }

  std::string body;
  for (std::size_t i = open + 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_fence_line(line)) break;  // unclosed fence: run to end of output
    if (i + 1 == lines.size() && line.empty()) break;  // split artifact after a final newline
    body.append(line);
    body += '\n';
  }
  return body;
}

std::optional<AlignmentMismatch> validate_comment_alignment(const AnnotatedProgram& a,
                                                            const AnnotatedProgram& b) {
  const std::size_t ka = a.comment_count(), kb = b.comment_count();
  const std::size_t common = std::min(ka, kb);
  for (std::size_t i = 0; i < common; ++i) {
    if (a.comments[i].normalized_text != b.comments[i].normalized_text)
      return AlignmentMismatch{i, a.comments[i].normalized_text, b.comments[i].normalized_text};
  }
  if (ka != kb) {
    AlignmentMismatch m;
    m.index = common;
    if (ka > kb) m.left = a.comments[common].normalized_text;
    if (kb > ka) m.right = b.comments[common].normalized_text;
    return m;
  }
  return std::nullopt;
}

FilterVerdict is_useless_snippet(std::string_view snippet, LanguageId language,
                                 const FilterConfig& config) {
  const LanguageFilterRules& rules = config.rules_for(language);
  bool any_line = false;
  bool any_import = false;
  for (std::string_view raw : split_lines(snippet)) {
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    any_line = true;

    bool is_import = false;
    for (const std::string& p : rules.import_prefixes) {
      if (line.substr(0, p.size()) == p) {
        is_import = true;
        break;
      }
    }
    if (is_import) {
      any_import = true;
      continue;
    }
    if (punct_only_line(line)) continue;
    if (std::find(rules.boilerplate_lines.begin(), rules.boilerplate_lines.end(), line) !=
        rules.boilerplate_lines.end())
      continue;
    return FilterVerdict{true, std::nullopt};  // a genuine code line
  }
  if (!any_line) return FilterVerdict{false, UselessReason::WhitespaceOnly};
  if (any_import) return FilterVerdict{false, UselessReason::ImportOnly};
  return FilterVerdict{false, UselessReason::BoilerplateOnly};
}

}  // namespace snippetforge
