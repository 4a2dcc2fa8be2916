#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "snippetforge/language.hpp"

namespace snippetforge {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Execution verdicts for one (problem, direction): n samples, c passing.
struct SampleRecord {
  std::string problem_id;
  LanguageId from = LanguageId::Python;
  LanguageId to = LanguageId::Java;
  int n = 0;
  int c = 0;
};

// Unbiased estimator 1 - C(n-c, k)/C(n, k), evaluated as the running product
// 1 - prod_{i=n-c+1..n} (1 - k/i) when n-c >= k, else exactly 1.
// pass_at_k(n, c, 1) == c/n and pass_at_k(n, c, n) == (c >= 1) hold exactly.
double pass_at_k(int n, int c, int k);

// Test oracle: enumerates all C(n, k) sample subsets (n <= 20) and returns the
// fraction containing at least one passing sample.
double pass_at_k_bruteforce(int n, int c, int k);

// "J2P" style label; letters P/J/C.
std::string pair_label(LanguageId from, LanguageId to);

// Accepts "J2P" letter form or language names joined by "2", "-", "->" or ":"
// (e.g. "java2python", "java->python"). Case-insensitive.
std::pair<LanguageId, LanguageId> parse_language_pair(std::string_view text);

// JSONL of {problem_id, language_pair, sample_index, passed}; duplicates of
// (problem_id, language_pair, sample_index) and malformed records are errors.
std::vector<SampleRecord> ingest_verdicts(const std::filesystem::path& path);

// Two-decimal banker's rounding used for all reported percentages.
double round_half_even_2dp(double value);

struct EvalTable {
  int k = 1;
  std::vector<std::pair<std::string, double>> pair_scores;  // label -> rounded percentage
  double avg = 0.0;                                         // unweighted mean of pair scores

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;
};

// Mean pass@k per direction as a rounded percentage, directions in the fixed
// column order J2P, C2P, P2C, J2C, P2J, C2J (extras appended alphabetically).
// Any record with n < k is an error listing the offending problems.
EvalTable aggregate(const std::vector<SampleRecord>& records, int k);

}  // namespace snippetforge
