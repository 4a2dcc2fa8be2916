#include "snippetforge/comment_lexer.hpp"

#include <cctype>

namespace snippetforge {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool all_whitespace(std::string_view s) {
  for (char c : s)
    if (!is_space(c)) return false;
  return true;
}

struct PrimSpan {
  std::size_t begin;
  std::size_t end;
  CommentKind kind;
};

// ---------------------------------------------------------------------------
// Scanners. Regex-free, string-literal aware. Every scanner walks the byte
// stream with an explicit state per construct; comment spans never include
// the line terminator.
// ---------------------------------------------------------------------------

// Consumes one backslash escape starting at text[j] == '\\'. An escaped CRLF
// counts as a single escaped terminator (line continuation).
std::size_t skip_escape(std::string_view text, std::size_t j) {
  const std::size_t n = text.size();
  if (j + 1 < n && text[j + 1] == '\r' && j + 2 < n && text[j + 2] == '\n') return j + 3;
  return j + 2;
}

std::vector<PrimSpan> scan_python(std::string_view text) {
  std::vector<PrimSpan> spans;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < n && text[j] != '\n' && text[j] != '\r') ++j;
      spans.push_back({i, j, CommentKind::Line});
      i = j;
      continue;
    }
    if (c == '\'' || c == '"') {
      const char q = c;
      if (i + 2 < n && text[i + 1] == q && text[i + 2] == q) {
        // triple-quoted string (includes docstrings; these are literals, not comments)
        std::size_t j = i + 3;
        bool closed = false;
        while (j < n) {
          if (text[j] == '\\') {
            j = skip_escape(text, j);
            continue;
          }
          if (text[j] == q && j + 2 < n && text[j + 1] == q && text[j + 2] == q) {
            j += 3;
            closed = true;
            break;
          }
          ++j;
        }
        if (!closed) throw LexError("unterminated triple-quoted string", i);
        i = j;
      } else {
        std::size_t j = i + 1;
        bool closed = false;
        while (j < n) {
          const char d = text[j];
          if (d == '\\') {
            j = skip_escape(text, j);
            continue;
          }
          if (d == q) {
            ++j;
            closed = true;
            break;
          }
          if (d == '\n' || d == '\r') throw LexError("unterminated string literal", i);
          ++j;
        }
        if (!closed) throw LexError("unterminated string literal", i);
        i = j;
      }
      continue;
    }
    ++i;
  }
  return spans;
}

struct CFamilyOpts {
  bool raw_strings = false;             // C++ R"delim(...)delim"
  bool digit_separator_quotes = false;  // C++14 1'000'000
  bool splice_line_comments = false;    // C++ backslash-newline inside //
};

// True when the quote at text[i] opens a raw string literal: the maximal
// identifier run ending just before it must be exactly R, LR, uR, UR or u8R.
bool is_raw_string_open(std::string_view text, std::size_t i) {
  std::size_t s = i;
  while (s > 0 && is_ident(text[s - 1])) --s;
  const std::string_view prefix = text.substr(s, i - s);
  return prefix == "R" || prefix == "LR" || prefix == "uR" || prefix == "UR" || prefix == "u8R";
}

std::vector<PrimSpan> scan_cfamily(std::string_view text, const CFamilyOpts& opts) {
  std::vector<PrimSpan> spans;
  const std::size_t n = text.size();
  std::size_t i = 0;
  bool prev_ident = false;  // previous code byte continues an identifier
  bool in_number = false;   // inside a numeric literal (digit separators live here)

  while (i < n) {
    const char c = text[i];

    if (in_number) {
      if (is_alnum(c) || c == '.') {
        prev_ident = true;
        ++i;
        continue;
      }
      if (c == '\'' && opts.digit_separator_quotes && i + 1 < n && is_alnum(text[i + 1])) {
        ++i;
        continue;
      }
      if ((c == '+' || c == '-') && i > 0 &&
          (text[i - 1] == 'e' || text[i - 1] == 'E' || text[i - 1] == 'p' || text[i - 1] == 'P')) {
        ++i;
        continue;
      }
      in_number = false;  // fall through, c is handled normally
    }

    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      std::size_t j = i + 2;
      while (j < n) {
        if (text[j] == '\n' || text[j] == '\r') {
          if (opts.splice_line_comments && j > i + 2 && text[j - 1] == '\\') {
            if (text[j] == '\r' && j + 1 < n && text[j + 1] == '\n')
              j += 2;
            else
              j += 1;
            continue;
          }
          break;
        }
        ++j;
      }
      spans.push_back({i, j, CommentKind::Line});
      i = j;
      prev_ident = false;
      continue;
    }

    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      const std::size_t close = text.find("*/", i + 2);
      if (close == std::string_view::npos) throw LexError("unterminated block comment", i);
      spans.push_back({i, close + 2, CommentKind::Block});
      i = close + 2;
      prev_ident = false;
      continue;
    }

    if (c == '"') {
      if (opts.raw_strings && is_raw_string_open(text, i)) {
        std::size_t d = i + 1;
        while (d < n && text[d] != '(') {
          const char dc = text[d];
          if (dc == ' ' || dc == ')' || dc == '\\' || dc == '\n' || dc == '\r' || d - i > 16)
            throw LexError("malformed raw string delimiter", i);
          ++d;
        }
        if (d >= n) throw LexError("unterminated raw string literal", i);
        std::string closer = ")";
        closer += text.substr(i + 1, d - i - 1);
        closer += '"';
        const std::size_t close = text.find(closer, d + 1);
        if (close == std::string_view::npos) throw LexError("unterminated raw string literal", i);
        i = close + closer.size();
        prev_ident = false;
        continue;
      }
      std::size_t j = i + 1;
      bool closed = false;
      while (j < n) {
        const char d = text[j];
        if (d == '\\') {
          j = skip_escape(text, j);
          continue;
        }
        if (d == '"') {
          ++j;
          closed = true;
          break;
        }
        if (d == '\n' || d == '\r') throw LexError("unterminated string literal", i);
        ++j;
      }
      if (!closed) throw LexError("unterminated string literal", i);
      i = j;
      prev_ident = false;
      continue;
    }

    if (c == '\'') {
      std::size_t j = i + 1;
      bool closed = false;
      while (j < n) {
        const char d = text[j];
        if (d == '\\') {
          j = skip_escape(text, j);
          continue;
        }
        if (d == '\'') {
          ++j;
          closed = true;
          break;
        }
        if (d == '\n' || d == '\r') throw LexError("unterminated character literal", i);
        ++j;
      }
      if (!closed) throw LexError("unterminated character literal", i);
      i = j;
      prev_ident = false;
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) && !prev_ident) in_number = true;
    prev_ident = is_ident(c);
    ++i;
  }
  return spans;
}

// Merges comments separated only by whitespace into one MergedGroup span so
// interior snippets always contain a non-whitespace byte.
std::vector<CommentSpan> merge_spans(std::string_view text, const std::vector<PrimSpan>& prims) {
  std::vector<CommentSpan> out;
  std::size_t idx = 0;
  while (idx < prims.size()) {
    const std::size_t first = idx;
    std::size_t last = idx;
    while (last + 1 < prims.size() &&
           all_whitespace(text.substr(prims[last].end, prims[last + 1].begin - prims[last].end)))
      ++last;

    CommentSpan span;
    span.range = ByteRange{prims[first].begin, prims[last].end};
    span.raw_text = std::string(text.substr(span.range.begin, span.range.size()));
    if (last > first) {
      span.kind = CommentKind::MergedGroup;
      std::string joined;
      for (std::size_t k = first; k <= last; ++k) {
        std::string piece =
            normalize_comment(text.substr(prims[k].begin, prims[k].end - prims[k].begin));
        if (piece.empty()) continue;
        if (!joined.empty()) joined += ' ';
        joined += piece;
      }
      span.normalized_text = std::move(joined);
    } else {
      span.kind = prims[first].kind;
      span.normalized_text = normalize_comment(span.raw_text);
    }
    out.push_back(std::move(span));
    idx = last + 1;
  }
  return out;
}

// Shared line pass for normalize_comment / comment_content: strips markers
// and per-line decoration, joins surviving lines with single spaces,
// collapses whitespace runs, trims.
std::string strip_markers_and_join(std::string_view raw) {
  std::string joined;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    if (eol == std::string_view::npos) eol = raw.size();
    std::string_view line = raw.substr(pos, eol - pos);
    pos = eol + 1;

    std::size_t b = 0, e = line.size();
    if (e > b && line[e - 1] == '\r') --e;
    // leading whitespace and marker characters (#, //, /*, *) to fixpoint
    while (b < e && (is_space(line[b]) || line[b] == '#' || line[b] == '/' || line[b] == '*')) ++b;
    while (e > b && is_space(line[e - 1])) --e;
    // trailing block-comment closers
    while (e - b >= 2 && line[e - 2] == '*' && line[e - 1] == '/') {
      e -= 2;
      while (e > b && is_space(line[e - 1])) --e;
    }
    if (b >= e) {
      if (pos > raw.size()) break;
      continue;
    }
    if (!joined.empty()) joined += ' ';
    joined.append(line.substr(b, e - b));
    if (pos > raw.size()) break;
  }

  std::string out;
  out.reserve(joined.size());
  bool pending_space = false;
  for (char c : joined) {
    if (is_space(c)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string normalize_comment(std::string_view raw) {
  std::string out = strip_markers_and_join(raw);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  while (true) {
    const std::size_t before = out.size();
    while (!out.empty() && out.back() == ' ') out.pop_back();
    while (!out.empty() &&
           (out.back() == '.' || out.back() == ',' || out.back() == ';' || out.back() == ':'))
      out.pop_back();
    if (out.size() == before) break;
  }
  return out;
}

std::string comment_content(std::string_view raw) { return strip_markers_and_join(raw); }

std::vector<CommentSpan> extract_comments(const Program& program) {
  const std::string_view text = program.source_text;
  std::vector<PrimSpan> prims;
  switch (program.language) {
    case LanguageId::Python:
      prims = scan_python(text);
      break;
    case LanguageId::Java:
      prims = scan_cfamily(text, CFamilyOpts{});
      break;
    case LanguageId::Cpp:
      prims = scan_cfamily(text, CFamilyOpts{true, true, true});
      break;
  }
  return merge_spans(text, prims);
}

AnnotatedProgram segment_by_comments(const Program& program) {
  AnnotatedProgram ann;
  ann.program = program;
  ann.comments = extract_comments(program);
  const std::string& text = ann.program.source_text;
  const std::size_t n = text.size();

  if (ann.comments.empty()) {
    ann.snippets.push_back(ByteRange{0, n});
    return ann;
  }
  ann.snippets.push_back(ByteRange{0, ann.comments.front().range.begin});
  for (std::size_t i = 0; i + 1 < ann.comments.size(); ++i)
    ann.snippets.push_back(ByteRange{ann.comments[i].range.end, ann.comments[i + 1].range.begin});
  ann.snippets.push_back(ByteRange{ann.comments.back().range.end, n});

  const ByteRange& last = ann.snippets.back();
  ann.trailing_empty = all_whitespace(std::string_view(text).substr(last.begin, last.size()));
  return ann;
}

std::string reconstruct(const AnnotatedProgram& annotated) {
  std::string out;
  out.reserve(annotated.program.source_text.size());
  for (std::size_t i = 0; i < annotated.snippets.size(); ++i) {
    out += annotated.snippet_text(i);
    if (i < annotated.comments.size()) out += annotated.comments[i].raw_text;
  }
  return out;
}

std::vector<std::string> comment_signature(const AnnotatedProgram& annotated) {
  std::vector<std::string> sig;
  sig.reserve(annotated.comments.size());
  for (const CommentSpan& c : annotated.comments) sig.push_back(c.normalized_text);
  return sig;
}

std::string strip_comments(const Program& program) {
  const std::vector<CommentSpan> spans = extract_comments(program);
  const std::string& text = program.source_text;
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  for (const CommentSpan& s : spans) {
    out.append(text, pos, s.range.begin - pos);
    pos = s.range.end;
  }
  out.append(text, pos, text.size() - pos);
  return out;
}

}  // namespace snippetforge
