#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "snippetforge/comment_lexer.hpp"
#include "snippetforge/corpus.hpp"
#include "snippetforge/filters.hpp"
#include "snippetforge/llm_client.hpp"

namespace snippetforge {

enum class RejectionKind { ParsingError, CommentsNotMatch, Filtered };

enum class PairMode { Unordered, Ordered };

// A stage-1 or stage-2 failure; callers record it as a ParsingError rejection.
class StageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rejection {
  RejectionKind kind;
  std::string problem_id;
  std::string lang_a;  // canonical (lang_a < lang_b); whole-problem events leave lang_b empty
  std::string lang_b;
  std::string detail;
};

// Stage-3 input: the rewritten targets with the annotated source as the last member.
struct RewrittenGroup {
  std::string problem_id;
  std::vector<AnnotatedProgram> members;
};

struct PairBreakdown {
  std::uint64_t accepted = 0;
  std::uint64_t parsing = 0;
  std::uint64_t comments_not_match = 0;
  std::uint64_t filtered = 0;
};

struct AugmentationReport {
  std::uint64_t initial_pairs = 0;
  std::uint64_t rejected_parsing = 0;
  std::uint64_t rejected_comments_not_match = 0;
  std::uint64_t rejected_filtered = 0;
  std::uint64_t final_pairs = 0;
  double usability_rate = 0.0;  // final / initial, raw fraction
  std::uint64_t ordered_pair_count = 0;
  std::uint64_t unordered_pair_count = 0;
  // Keyed "langA-langB" (names sorted); single-language keys hold whole-problem
  // stage-1 failures. Counts are events, independent of pair mode.
  std::map<std::string, PairBreakdown> per_language_pair;
  std::uint64_t no_separator_problems = 0;

  nlohmann::ordered_json to_json() const;
};

// Accumulates accepted pairs (counted once per unordered pair) and rejection
// events; build() derives initial/final/usability for the chosen mode, so
// initial = final + sum(rejected) holds by construction.
class ReportBuilder {
 public:
  void add_accepted(const std::string& lang_a, const std::string& lang_b, std::uint64_t n = 1);
  void add_rejection(RejectionKind kind, const std::string& lang_a, const std::string& lang_b = "",
                     std::uint64_t n = 1);
  void add_no_separator_problem();
  AugmentationReport build(PairMode mode = PairMode::Unordered) const;

 private:
  std::map<std::string, PairBreakdown> per_pair_;
  std::uint64_t accepted_ = 0;
  std::uint64_t parsing_ = 0;
  std::uint64_t mismatch_ = 0;
  std::uint64_t filtered_ = 0;
  std::uint64_t no_separator_ = 0;
};

struct PipelineConfig {
  PairMode pair_mode = PairMode::Unordered;
  int workers = 4;
  FilterConfig filters = FilterConfig::defaults();
  PromptTemplates prompts = PromptTemplates::defaults();
};

// Stage 1: asks the backend to insert separator comments into the group's
// source, extracts and segments the reply, and verifies the code itself is
// untouched (Python: the sequence of comment-stripped, right-trimmed,
// non-blank lines must match; Java/C++: comment-stripped text must match with
// all whitespace removed). Throws StageError on any failure.
AnnotatedProgram stage1_insert_comments(const ProblemGroup& group, TextBackend& backend,
                                        const PromptTemplates& prompts = PromptTemplates::defaults());

// Stage 2: rewrites one target to carry the source's comments. The code may
// legitimately differ from the original target, so only extraction and
// lexing can fail. Throws StageError; requires the source to have >= 1 comment.
AnnotatedProgram stage2_rewrite_target(const AnnotatedProgram& annotated_source,
                                       const Program& target, TextBackend& backend,
                                       const PromptTemplates& prompts = PromptTemplates::defaults());

struct Stage3Result {
  std::vector<SnippetPair> pairs;
  std::vector<Rejection> rejections;
};

// Stage 3: for every member pair with equal comment signatures, emits one
// SnippetPair per index p in [0, k]. Index 0 is skipped silently when both
// sides are whitespace-only; a pair with exactly one useless side (or any
// useless side at p > 0) is recorded as one Filtered rejection. A signature
// mismatch costs one CommentsNotMatch rejection for that language pair and
// never affects the other pairs. Ordered mode emits both orientations;
// otherwise pairs are canonical (lang_a < lang_b by name).
Stage3Result stage3_split_and_match(const RewrittenGroup& group,
                                    PairMode mode = PairMode::Unordered,
                                    const FilterConfig& filters = FilterConfig::defaults());

struct PipelineResult {
  std::vector<SnippetPair> pairs;  // sorted by (problem_id, lang_a, lang_b, snippet_index)
  AugmentationReport report;
};

// Runs stages 1-3 over the corpus with a bounded worker pool. Problems fail
// independently: a stage-1 failure costs one ParsingError for the problem, a
// stage-2 failure one ParsingError for that (source, target) pair.
PipelineResult run_pipeline(const std::vector<ProblemGroup>& corpus, TextBackend& backend,
                            const PipelineConfig& config = {});

}  // namespace snippetforge
