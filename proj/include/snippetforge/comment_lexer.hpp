#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snippetforge/corpus.hpp"

namespace snippetforge {

/// Raised when a program cannot be scanned: unterminated block comment,
/// unterminated string literal, or similar. Downstream this maps to a
/// ParsingError rejection for the affected problem.
class LexError : public std::runtime_error {
 public:
  LexError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class CommentKind { Line, Block, MergedGroup };

/// Half-open byte range into a program's source_text.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const ByteRange&) const = default;
};

/// One comment separator. For a MergedGroup the range covers every member
/// comment plus the whitespace between them; raw_text keeps the markers.
struct CommentSpan {
  ByteRange range;
  std::string raw_text;
  std::string normalized_text;
  CommentKind kind = CommentKind::Line;
};

/// A program decomposed into the alternating snippet/comment sequence:
/// snippet 0, comment 1, snippet 1, ..., comment k, snippet k.
/// Concatenating the pieces in order reproduces source_text byte-exactly.
/// Snippet 0 may be empty; interior snippets contain a non-whitespace byte;
/// a whitespace-only final snippet is flagged trailing_empty instead of
/// being merged away.
struct AnnotatedProgram {
  Program program;
  std::vector<CommentSpan> comments;  // k entries
  std::vector<ByteRange> snippets;    // k+1 entries
  bool trailing_empty = false;

  std::size_t comment_count() const { return comments.size(); }
  std::string_view snippet_text(std::size_t index) const {
    const ByteRange& r = snippets.at(index);
    return std::string_view(program.source_text).substr(r.begin, r.size());
  }
};

/// Normalizes comment text for content comparison: markers stripped,
/// whitespace collapsed to single spaces, trimmed, ASCII-lowercased,
/// trailing .,;: removed. Idempotent.
std::string normalize_comment(std::string_view raw);

/// Like normalize_comment but preserves case and trailing punctuation;
/// used where comment text is shown to a model rather than compared.
std::string comment_content(std::string_view raw);

/// All line/block comments outside string literals, in source order.
/// Comments separated only by whitespace are merged into one MergedGroup
/// span whose normalized_text joins the member normalizations with single
/// spaces. Throws LexError on unterminated constructs.
std::vector<CommentSpan> extract_comments(const Program& program);

/// Splits a program on its comment separators. Throws LexError.
AnnotatedProgram segment_by_comments(const Program& program);

/// Concatenates the snippet and comment pieces back into the source bytes.
std::string reconstruct(const AnnotatedProgram& annotated);

/// The ordered normalized comment texts; two programs align exactly when
/// their signatures are equal as sequences.
std::vector<std::string> comment_signature(const AnnotatedProgram& annotated);

/// Source text with every comment span removed; used by the stage-1
/// code-mutation check. Throws LexError.
std::string strip_comments(const Program& program);

}  // namespace snippetforge
