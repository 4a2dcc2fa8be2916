#include "snippetforge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <thread>
#include <tuple>

#include "snippetforge/log.hpp"

namespace snippetforge {

namespace {

bool all_whitespace(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string pair_key(std::string la, std::string lb) {
  if (lb.empty()) return la;
  if (lb < la) std::swap(la, lb);
  return la + "-" + lb;
}

// Comment-stripped, right-trimmed, non-blank lines: Python's indentation makes
// horizontal whitespace significant, so compare line sequences.
std::vector<std::string> significant_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line =
        eol == std::string::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return lines;
}

std::string without_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

bool code_unchanged(const Program& original, const Program& rewritten) {
  const std::string a = strip_comments(original);
  const std::string b = strip_comments(rewritten);
  if (original.language == LanguageId::Python) return significant_lines(a) == significant_lines(b);
  return without_whitespace(a) == without_whitespace(b);
}

AnnotatedProgram parse_model_program(const std::string& raw_output, const Program& shape,
                                     const char* stage) {
  std::string code;
  try {
    code = extract_code_block(raw_output);
  } catch (const ExtractionError& e) {
    throw StageError(std::string(stage) + ": " + e.what());
  }
  Program out{shape.problem_id, shape.language, std::move(code)};
  try {
    return segment_by_comments(out);
  } catch (const LexError& e) {
    throw StageError(std::string(stage) + ": " + e.what());
  }
}

struct ProblemOutcome {
  std::vector<SnippetPair> pairs;
  std::vector<Rejection> rejections;
  bool no_separator = false;
};

ProblemOutcome process_problem(const ProblemGroup& group, TextBackend& backend,
                               const PipelineConfig& config) {
  ProblemOutcome out;

  AnnotatedProgram source;
  try {
    source = stage1_insert_comments(group, backend, config.prompts);
  } catch (const StageError& e) {
    out.rejections.push_back({RejectionKind::ParsingError, group.problem_id,
                              std::string(language_name(group.source.language)), "", e.what()});
    return out;
  }
  if (source.comment_count() == 0) {
    out.no_separator = true;
    return out;
  }

  RewrittenGroup rewritten;
  rewritten.problem_id = group.problem_id;
  for (const Program& target : group.targets) {
    try {
      rewritten.members.push_back(stage2_rewrite_target(source, target, backend, config.prompts));
    } catch (const StageError& e) {
      std::string la(language_name(group.source.language));
      std::string lb(language_name(target.language));
      if (lb < la) std::swap(la, lb);
      out.rejections.push_back(
          {RejectionKind::ParsingError, group.problem_id, la, lb, e.what()});
    }
  }
  rewritten.members.push_back(source);
  if (rewritten.members.size() < 2) return out;

  Stage3Result matched = stage3_split_and_match(rewritten, config.pair_mode, config.filters);
  out.pairs = std::move(matched.pairs);
  out.rejections.insert(out.rejections.end(), matched.rejections.begin(),
                        matched.rejections.end());
  return out;
}

}  // namespace

AnnotatedProgram stage1_insert_comments(const ProblemGroup& group, TextBackend& backend,
                                        const PromptTemplates& prompts) {
  std::string raw;
  try {
    raw = backend.generate(build_stage1_prompt(group.source, prompts));
  } catch (const std::runtime_error& e) {
    throw StageError(std::string("stage 1 backend: ") + e.what());
  }
  AnnotatedProgram annotated = parse_model_program(raw, group.source, "stage 1");
  if (!code_unchanged(group.source, annotated.program))
    throw StageError("stage 1: model output modified the code");
  return annotated;
}

AnnotatedProgram stage2_rewrite_target(const AnnotatedProgram& annotated_source,
                                       const Program& target, TextBackend& backend,
                                       const PromptTemplates& prompts) {
  std::string raw;
  try {
    raw = backend.generate(build_stage2_prompt(annotated_source, target, prompts));
  } catch (const std::runtime_error& e) {
    throw StageError(std::string("stage 2 backend: ") + e.what());
  }
  return parse_model_program(raw, target, "stage 2");
}

Stage3Result stage3_split_and_match(const RewrittenGroup& group, PairMode mode,
                                    const FilterConfig& filters) {
  Stage3Result out;
  const std::vector<AnnotatedProgram>& members = group.members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const AnnotatedProgram* a = &members[i];
      const AnnotatedProgram* b = &members[j];
      if (language_name(b->program.language) < language_name(a->program.language)) std::swap(a, b);
      const std::string la{language_name(a->program.language)};
      const std::string lb{language_name(b->program.language)};

      if (auto mismatch = validate_comment_alignment(*a, *b)) {
        out.rejections.push_back({RejectionKind::CommentsNotMatch, group.problem_id, la, lb,
                                  "comment " + std::to_string(mismatch->index) + ": \"" +
                                      mismatch->left + "\" vs \"" + mismatch->right + "\""});
        continue;
      }

      const std::size_t k = a->comment_count();
      for (std::size_t p = 0; p <= k; ++p) {
        const std::string sa{a->snippet_text(p)};
        const std::string sb{b->snippet_text(p)};
        if (p == 0 && all_whitespace(sa) && all_whitespace(sb)) continue;

        const FilterVerdict va = is_useless_snippet(sa, a->program.language, filters);
        const FilterVerdict vb = is_useless_snippet(sb, b->program.language, filters);
        if (!va.accepted || !vb.accepted) {
          out.rejections.push_back({RejectionKind::Filtered, group.problem_id, la, lb,
                                    "snippet " + std::to_string(p)});
          continue;
        }

        SnippetPair pair;
        pair.problem_id = group.problem_id;
        pair.snippet_index = static_cast<int>(p);
        pair.lang_a = a->program.language;
        pair.lang_b = b->program.language;
        pair.comment = p == 0 ? std::string() : a->comments[p - 1].normalized_text;
        pair.snippet_a = sa;
        pair.snippet_b = sb;
        out.pairs.push_back(std::move(pair));
      }
    }
  }

  if (mode == PairMode::Ordered) {
    const std::size_t canonical = out.pairs.size();
    out.pairs.reserve(2 * canonical);
    for (std::size_t i = 0; i < canonical; ++i) {
      SnippetPair swapped = out.pairs[i];
      std::swap(swapped.lang_a, swapped.lang_b);
      std::swap(swapped.snippet_a, swapped.snippet_b);
      out.pairs.push_back(std::move(swapped));
    }
  }
  return out;
}

void ReportBuilder::add_accepted(const std::string& lang_a, const std::string& lang_b,
                                 std::uint64_t n) {
  accepted_ += n;
  per_pair_[pair_key(lang_a, lang_b)].accepted += n;
}

void ReportBuilder::add_rejection(RejectionKind kind, const std::string& lang_a,
                                  const std::string& lang_b, std::uint64_t n) {
  PairBreakdown& slot = per_pair_[pair_key(lang_a, lang_b)];
  switch (kind) {
    case RejectionKind::ParsingError:
      parsing_ += n;
      slot.parsing += n;
      break;
    case RejectionKind::CommentsNotMatch:
      mismatch_ += n;
      slot.comments_not_match += n;
      break;
    case RejectionKind::Filtered:
      filtered_ += n;
      slot.filtered += n;
      break;
  }
}

void ReportBuilder::add_no_separator_problem() { ++no_separator_; }

AugmentationReport ReportBuilder::build(PairMode mode) const {
  AugmentationReport r;
  r.unordered_pair_count = accepted_;
  r.ordered_pair_count = 2 * accepted_;
  r.final_pairs = mode == PairMode::Ordered ? r.ordered_pair_count : r.unordered_pair_count;
  r.rejected_parsing = parsing_;
  r.rejected_comments_not_match = mismatch_;
  r.rejected_filtered = filtered_;
  r.initial_pairs = r.final_pairs + parsing_ + mismatch_ + filtered_;
  r.usability_rate =
      r.initial_pairs == 0 ? 0.0 : static_cast<double>(r.final_pairs) / r.initial_pairs;
  r.per_language_pair = per_pair_;
  r.no_separator_problems = no_separator_;
  return r;
}

nlohmann::ordered_json AugmentationReport::to_json() const {
  nlohmann::ordered_json j;
  j["initial"] = initial_pairs;
  j["rejected"] = {{"parsing", rejected_parsing},
                   {"comments_not_match", rejected_comments_not_match},
                   {"filtered", rejected_filtered}};
  j["final"] = final_pairs;
  j["usability_rate"] = usability_rate;
  j["ordered_pairs"] = ordered_pair_count;
  j["unordered_pairs"] = unordered_pair_count;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::object();
  for (const auto& [key, b] : per_language_pair) {
    pairs[key] = {{"accepted", b.accepted},
                  {"parsing", b.parsing},
                  {"comments_not_match", b.comments_not_match},
                  {"filtered", b.filtered}};
  }
  j["per_language_pair"] = std::move(pairs);
  j["no_separator_problems"] = no_separator_problems;
  return j;
}

PipelineResult run_pipeline(const std::vector<ProblemGroup>& corpus, TextBackend& backend,
                            const PipelineConfig& config) {
  std::vector<ProblemOutcome> outcomes(corpus.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= corpus.size()) break;
      try {
        outcomes[idx] = process_problem(corpus[idx], backend, config);
      } catch (const std::exception& e) {
        // per-problem isolation: nothing a single problem does may abort the run
        ProblemOutcome failed;
        failed.rejections.push_back(
            {RejectionKind::ParsingError, corpus[idx].problem_id,
             std::string(language_name(corpus[idx].source.language)), "",
             std::string("internal: ") + e.what()});
        outcomes[idx] = std::move(failed);
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(
      std::max(config.workers, 1), corpus.empty() ? 1 : corpus.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();

  PipelineResult result;
  ReportBuilder builder;
  for (ProblemOutcome& o : outcomes) {
    if (o.no_separator) builder.add_no_separator_problem();
    for (const Rejection& r : o.rejections) builder.add_rejection(r.kind, r.lang_a, r.lang_b);
    for (SnippetPair& p : o.pairs) {
      const std::string na(language_name(p.lang_a));
      const std::string nb(language_name(p.lang_b));
      if (na < nb) builder.add_accepted(na, nb);  // once per unordered pair
      result.pairs.push_back(std::move(p));
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const SnippetPair& x, const SnippetPair& y) {
              const std::string_view xa = language_name(x.lang_a);
              const std::string_view xb = language_name(x.lang_b);
              const std::string_view ya = language_name(y.lang_a);
              const std::string_view yb = language_name(y.lang_b);
              return std::tie(x.problem_id, xa, xb, x.snippet_index) <
                     std::tie(y.problem_id, ya, yb, y.snippet_index);
            });
  result.report = builder.build(config.pair_mode);
  return result;
}

}  // namespace snippetforge
