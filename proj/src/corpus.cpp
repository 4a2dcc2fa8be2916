#include "snippetforge/corpus.hpp"

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <system_error>

#include "json.hpp"
#include "snippetforge/log.hpp"

namespace snippetforge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct RawGroup {
  std::vector<Program> members;  // file order
};

}  // namespace

std::vector<ProblemGroup> load_pa_corpus(const std::filesystem::path& path,
                                         LanguageId pivot, PaLoadStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open PA corpus: " + path.string());

  PaLoadStats local;
  PaLoadStats& st = stats ? *stats : local;
  st = PaLoadStats{};

  std::vector<std::string> order;  // first-appearance order of problem ids
  std::map<std::string, RawGroup> groups;
  std::set<std::pair<std::string, LanguageId>> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++st.total_lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      ++st.blank_lines;
      continue;
    }
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("problem_id") ||
        !rec.contains("language") || !rec.contains("source_text") ||
        !rec["problem_id"].is_string() || !rec["language"].is_string() ||
        !rec["source_text"].is_string()) {
      ++st.malformed_lines;
      log_warn("pa corpus line " + std::to_string(line_no) + ": malformed record, skipped");
      continue;
    }
    auto lang = parse_language(rec["language"].get<std::string>());
    if (!lang) {
      ++st.unknown_language;
      log_warn("pa corpus line " + std::to_string(line_no) + ": unknown language tag '" +
               rec["language"].get<std::string>() + "', skipped");
      continue;
    }
    Program p;
    p.problem_id = rec["problem_id"].get<std::string>();
    p.language = *lang;
    p.source_text = rec["source_text"].get<std::string>();
    if (p.source_text.empty()) {
      ++st.malformed_lines;
      log_warn("pa corpus line " + std::to_string(line_no) + ": empty source_text, skipped");
      continue;
    }
    if (!seen.insert({p.problem_id, p.language}).second) {
      ++st.duplicate_records;
      log_warn("pa corpus line " + std::to_string(line_no) + ": duplicate (problem_id, language), skipped");
      continue;
    }
    ++st.parsed_records;
    auto it = groups.find(p.problem_id);
    if (it == groups.end()) {
      order.push_back(p.problem_id);
      it = groups.emplace(p.problem_id, RawGroup{}).first;
    }
    it->second.members.push_back(std::move(p));
  }

  std::vector<ProblemGroup> out;
  out.reserve(order.size());
  for (const std::string& pid : order) {
    RawGroup& raw = groups.at(pid);
    ProblemGroup g;
    g.problem_id = pid;
    bool have_pivot = false;
    for (Program& m : raw.members) {
      if (m.language == pivot && !have_pivot) {
        g.source = std::move(m);
        have_pivot = true;
      } else {
        g.targets.push_back(std::move(m));
      }
    }
    if (!have_pivot) {
      ++st.groups_skipped;
      st.records_in_skipped_groups += raw.members.size();
      log_warn("problem '" + pid + "': no program in pivot language, group skipped");
      continue;
    }
    if (g.targets.empty()) {
      ++st.groups_skipped;
      st.records_in_skipped_groups += raw.members.size();
      log_warn("problem '" + pid + "': pivot program has no translation targets, group skipped");
      continue;
    }
    ++st.groups_loaded;
    out.push_back(std::move(g));
  }
  return out;
}

std::size_t write_sa_corpus(const std::vector<SnippetPair>& pairs,
                            const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    for (const SnippetPair& p : pairs) {
      ordered_json rec;
      rec["problem_id"] = p.problem_id;
      rec["snippet_index"] = p.snippet_index;
      rec["lang_a"] = std::string(language_name(p.lang_a));
      rec["lang_b"] = std::string(language_name(p.lang_b));
      rec["comment"] = p.comment;
      rec["snippet_a"] = p.snippet_a;
      rec["snippet_b"] = p.snippet_b;
      out << rec.dump() << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() +
                                   ": " + ec.message());
  return pairs.size();
}

std::vector<SnippetPair> load_sa_corpus(const std::filesystem::path& path, SaLoadStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open SA corpus: " + path.string());

  SaLoadStats local;
  SaLoadStats& st = stats ? *stats : local;
  st = SaLoadStats{};

  std::vector<SnippetPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++st.total_lines;
    json rec = json::parse(line, nullptr, false);
    std::optional<LanguageId> la, lb;
    const auto is_str = [&rec](const char* key) {
      return rec.contains(key) && rec[key].is_string();
    };
    if (!rec.is_discarded() && rec.is_object() && is_str("problem_id") &&
        rec.contains("snippet_index") && rec["snippet_index"].is_number_integer() &&
        is_str("lang_a") && is_str("lang_b") && is_str("comment") && is_str("snippet_a") &&
        is_str("snippet_b")) {
      la = parse_language(rec["lang_a"].get<std::string>());
      lb = parse_language(rec["lang_b"].get<std::string>());
    }
    if (!la || !lb) {
      ++st.malformed_lines;
      log_warn("sa corpus line " + std::to_string(line_no) + ": malformed record, skipped");
      continue;
    }
    SnippetPair p;
    p.problem_id = rec["problem_id"].get<std::string>();
    p.snippet_index = rec["snippet_index"].get<int>();
    p.lang_a = *la;
    p.lang_b = *lb;
    p.comment = rec["comment"].get<std::string>();
    p.snippet_a = rec["snippet_a"].get<std::string>();
    p.snippet_b = rec["snippet_b"].get<std::string>();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace snippetforge
