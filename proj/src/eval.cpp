#include "snippetforge/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

namespace snippetforge {

namespace {

void check_nc(int n, int c, int k) {
  if (n < 1) throw std::invalid_argument("pass@k requires n >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("pass@k requires 1 <= k <= n");
  if (c < 0 || c > n) throw std::invalid_argument("pass@k requires 0 <= c <= n");
}

LanguageId letter_to_language(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'P': return LanguageId::Python;
    case 'J': return LanguageId::Java;
    case 'C': return LanguageId::Cpp;
    default: throw std::invalid_argument(std::string("unknown language letter: ") + c);
  }
}

// Fixed presentation order for translation directions.
constexpr const char* kColumnOrder[] = {"J2P", "C2P", "P2C", "J2C", "P2J", "C2J"};

std::size_t column_rank(const std::string& label) {
  for (std::size_t i = 0; i < std::size(kColumnOrder); ++i)
    if (label == kColumnOrder[i]) return i;
  return std::size(kColumnOrder);
}

}  // namespace

double pass_at_k(int n, int c, int k) {
  check_nc(n, c, k);
  if (n - c < k) return 1.0;
  if (k == 1) return static_cast<double>(c) / n;
  double prod = 1.0;
  for (int i = n - c + 1; i <= n; ++i) prod *= 1.0 - static_cast<double>(k) / i;
  return 1.0 - prod;
}

double pass_at_k_bruteforce(int n, int c, int k) {
  check_nc(n, c, k);
  if (n > 20) throw std::invalid_argument("brute-force oracle is limited to n <= 20");
  // samples 0..c-1 pass; a sorted subset contains a pass iff its minimum < c
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::uint64_t total = 0, hit = 0;
  while (true) {
    ++total;
    if (idx[0] < c) ++hit;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

std::string pair_label(LanguageId from, LanguageId to) {
  return std::string(1, language_letter(from)) + "2" + language_letter(to);
}

std::pair<LanguageId, LanguageId> parse_language_pair(std::string_view text) {
  if (text.size() == 3 && (text[1] == '2' || text[1] == '-'))
    return {letter_to_language(text[0]), letter_to_language(text[2])};
  for (std::string_view sep : {"->", "2", "-", ":"}) {
    const std::size_t pos = text.find(sep);
    if (pos == std::string_view::npos || pos == 0 || pos + sep.size() >= text.size()) continue;
    const std::optional<LanguageId> from = parse_language(text.substr(0, pos));
    const std::optional<LanguageId> to = parse_language(text.substr(pos + sep.size()));
    if (from && to) return {*from, *to};
  }
  throw std::invalid_argument("cannot parse language pair: " + std::string(text));
}

std::vector<SampleRecord> ingest_verdicts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvalError("cannot open verdict file: " + path.string());

  struct Tally {
    LanguageId from, to;
    int n = 0, c = 0;
    std::set<long long> seen;
  };
  std::map<std::pair<std::string, std::string>, Tally> tallies;  // (label, problem_id)

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;

    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object())
      throw EvalError("line " + std::to_string(lineno) + ": not a JSON object");
    if (!rec.contains("problem_id") || !rec["problem_id"].is_string() ||
        !rec.contains("language_pair") || !rec["language_pair"].is_string() ||
        !rec.contains("sample_index") || !rec["sample_index"].is_number_integer() ||
        !rec.contains("passed") || !rec["passed"].is_boolean())
      throw EvalError("line " + std::to_string(lineno) +
                      ": expected {problem_id, language_pair, sample_index, passed}");

    std::pair<LanguageId, LanguageId> dir;
    try {
      dir = parse_language_pair(rec["language_pair"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw EvalError("line " + std::to_string(lineno) + ": " + e.what());
    }
    const std::string label = pair_label(dir.first, dir.second);
    const std::string problem = rec["problem_id"].get<std::string>();
    const long long sample = rec["sample_index"].get<long long>();

    Tally& t = tallies[{label, problem}];
    t.from = dir.first;
    t.to = dir.second;
    if (!t.seen.insert(sample).second)
      throw EvalError("duplicate sample_index " + std::to_string(sample) + " for problem \"" +
                      problem + "\" pair " + label);
    ++t.n;
    if (rec["passed"].get<bool>()) ++t.c;
  }

  std::vector<SampleRecord> records;
  records.reserve(tallies.size());
  for (const auto& [key, t] : tallies)
    records.push_back(SampleRecord{key.second, t.from, t.to, t.n, t.c});
  return records;
}

double round_half_even_2dp(double value) { return std::nearbyint(value * 100.0) / 100.0; }

EvalTable aggregate(const std::vector<SampleRecord>& records, int k) {
  if (k < 1) throw EvalError("k must be >= 1");

  std::string offenders;
  for (const SampleRecord& r : records) {
    if (r.n < k) {
      if (!offenders.empty()) offenders += ", ";
      offenders += r.problem_id + " (" + pair_label(r.from, r.to) +
                   ", n=" + std::to_string(r.n) + ")";
    }
  }
  if (!offenders.empty()) throw EvalError("records with n < k: " + offenders);

  std::map<std::string, std::pair<double, std::size_t>> sums;  // label -> (sum, count)
  for (const SampleRecord& r : records) {
    auto& slot = sums[pair_label(r.from, r.to)];
    slot.first += pass_at_k(r.n, r.c, k);
    slot.second += 1;
  }

  EvalTable table;
  table.k = k;
  std::vector<std::string> labels;
  for (const auto& [label, _] : sums) labels.push_back(label);
  std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
    const std::size_t ra = column_rank(a), rb = column_rank(b);
    return ra != rb ? ra < rb : a < b;
  });

  double total = 0.0;
  for (const std::string& label : labels) {
    const auto& [sum, count] = sums[label];
    const double pct = round_half_even_2dp(100.0 * sum / static_cast<double>(count));
    table.pair_scores.emplace_back(label, pct);
    total += pct;
  }
  table.avg = table.pair_scores.empty()
                  ? 0.0
                  : round_half_even_2dp(total / static_cast<double>(table.pair_scores.size()));
  return table;
}

std::string EvalTable::to_text() const {
  char buf[64];
  std::string head = "pass@" + std::to_string(k);
  std::string row = head;
  std::string header(head.size(), ' ');
  auto add = [&](const std::string& label, double value) {
    std::snprintf(buf, sizeof buf, "%.2f", value);
    const std::size_t width = std::max(label.size(), std::strlen(buf)) + 2;
    header += std::string(width - label.size(), ' ') + label;
    row += std::string(width - std::strlen(buf), ' ') + buf;
  };
  for (const auto& [label, value] : pair_scores) add(label, value);
  add("AVG", avg);
  return header + "\n" + row + "\n";
}

nlohmann::ordered_json EvalTable::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::object();
  for (const auto& [label, value] : pair_scores) pairs[label] = value;
  j["pairs"] = std::move(pairs);
  j["avg"] = avg;
  return j;
}

}  // namespace snippetforge
