#include "snippetforge/llm_client.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <semaphore>
#include <sstream>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "snippetforge/log.hpp"

namespace snippetforge {

namespace {

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char hexd[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hexd[md[i] >> 4];
    out += hexd[md[i] & 0xF];
  }
  return out;
}

std::string substitute(std::string text, std::string_view key, std::string_view value) {
  const std::string needle = "{{" + std::string(key) + "}}";
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return text;
}

std::string with_trailing_newline(std::string_view s) {
  std::string out(s);
  if (out.empty() || out.back() != '\n') out += '\n';
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_fence(std::string_view line) { return trim_copy(line).substr(0, 3) == "```"; }

std::vector<std::string> fenced_bodies(const std::vector<std::string>& lines) {
  std::vector<std::string> bodies;
  bool inside = false;
  std::string current;
  for (const std::string& line : lines) {
    if (is_fence(line)) {
      if (inside) {
        bodies.push_back(current);
        current.clear();
      }
      inside = !inside;
      continue;
    }
    if (inside) {
      current += line;
      current += '\n';
    }
  }
  return bodies;
}

std::optional<std::string> line_after_prefix(const std::vector<std::string>& lines,
                                             std::string_view prefix) {
  for (const std::string& line : lines)
    if (std::string_view(line).substr(0, prefix.size()) == prefix)
      return trim_copy(std::string_view(line).substr(prefix.size()));
  return std::nullopt;
}

// Parses "Comments (in order):" followed by "1. text" lines.
std::optional<std::vector<std::string>> numbered_list(const std::vector<std::string>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim_copy(lines[i]) != "Comments (in order):") continue;
    std::vector<std::string> items;
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      std::string_view line = lines[j];
      std::size_t d = 0;
      while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
      if (d == 0 || d >= line.size() || line[d] != '.') break;
      std::size_t start = d + 1;
      if (start < line.size() && line[start] == ' ') ++start;
      items.push_back(trim_copy(line.substr(start)));
    }
    return items;
  }
  return std::nullopt;
}

// Maximal runs of non-blank lines, each joined with '\n' (no trailing newline).
std::vector<std::string> blank_separated_blocks(std::string_view code) {
  std::vector<std::string> blocks;
  std::string current;
  bool in_block = false;
  for (const std::string& line : split_lines(code)) {
    if (is_blank(line)) {
      if (in_block) {
        blocks.push_back(current);
        current.clear();
        in_block = false;
      }
      continue;
    }
    if (in_block) current += '\n';
    current += line;
    in_block = true;
  }
  if (in_block) blocks.push_back(current);
  return blocks;
}

std::string read_file_or(const std::filesystem::path& path, const std::string& fallback) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return fallback;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr const char* kStage1System =
    "You are a meticulous code annotator. You insert comments into programs without "
    "changing a single code token.";

constexpr const char* kStage1User = R"TPL(You will be given a {{language}} program. Insert brief {{language}} comments that split it into short logical steps, so that no step is excessively long.

Rules:
- Do not modify, reorder, or delete any code; only insert comment lines.
- Insert as many separator comments as reasonable, one before each step.
- Put each comment on its own line, starting with the comment marker.
- Reply with the complete commented program in one fenced code block.

Comment marker: {{marker}}

Program:
```{{language}}
{{source}}```
)TPL";

constexpr const char* kStage2System =
    "You are a meticulous code rewriter. You align comments across programming languages "
    "while preserving program behavior.";

constexpr const char* kStage2User = R"TPL(Below are two programs that solve the same task: a commented {{source_language}} program and a {{target_language}} program.

Rewrite the {{target_language}} program so that it contains the same comments, with the same content and in the same order, as the {{source_language}} program. Place each comment on its own line immediately before the code that performs that step. Rewrite code only where needed; apart from the inserted comments, the program may stay identical.

Comment marker: {{marker}}

Comments (in order):
{{comments}}

Commented {{source_language}} program:
```{{source_language}}
{{commented_source}}```

{{target_language}} program:
```{{target_language}}
{{target}}```

Reply with the complete rewritten {{target_language}} program in one fenced code block.
)TPL";

}  // namespace

// --------------------------------------------------------------------------
// Prompt construction
// --------------------------------------------------------------------------

PromptTemplates PromptTemplates::defaults() {
  PromptTemplates t;
  t.stage1_system = kStage1System;
  t.stage1_user = kStage1User;
  t.stage2_system = kStage2System;
  t.stage2_user = kStage2User;
  return t;
}

PromptTemplates PromptTemplates::load_dir(const std::filesystem::path& dir) {
  PromptTemplates t = defaults();
  t.stage1_system = read_file_or(dir / "stage1_system.txt", t.stage1_system);
  t.stage1_user = read_file_or(dir / "stage1_user.txt", t.stage1_user);
  t.stage2_system = read_file_or(dir / "stage2_system.txt", t.stage2_system);
  t.stage2_user = read_file_or(dir / "stage2_user.txt", t.stage2_user);
  t.model_name = trim_copy(read_file_or(dir / "model_name.txt", t.model_name));
  return t;
}

GenerationRequest build_stage1_prompt(const Program& source, const PromptTemplates& templates) {
  const Language& lang = language_traits(source.language);
  std::string user = templates.stage1_user;
  user = substitute(std::move(user), "language", lang.name);
  user = substitute(std::move(user), "marker", lang.line_comment_marker);
  user = substitute(std::move(user), "source", with_trailing_newline(source.source_text));

  GenerationRequest req;
  req.system_prompt = templates.stage1_system;
  req.user_prompt = std::move(user);
  req.model_name = templates.model_name;
  return req;
}

GenerationRequest build_stage2_prompt(const AnnotatedProgram& annotated_source,
                                      const Program& target, const PromptTemplates& templates) {
  if (annotated_source.comment_count() == 0)
    throw std::invalid_argument("stage-2 prompt requires a source with at least one comment");

  const Language& src_lang = language_traits(annotated_source.program.language);
  const Language& dst_lang = language_traits(target.language);

  std::string comments;
  for (std::size_t i = 0; i < annotated_source.comments.size(); ++i) {
    comments += std::to_string(i + 1);
    comments += ". ";
    comments += comment_content(annotated_source.comments[i].raw_text);
    if (i + 1 < annotated_source.comments.size()) comments += '\n';
  }

  std::string user = templates.stage2_user;
  user = substitute(std::move(user), "source_language", src_lang.name);
  user = substitute(std::move(user), "target_language", dst_lang.name);
  user = substitute(std::move(user), "marker", dst_lang.line_comment_marker);
  user = substitute(std::move(user), "comments", comments);
  user = substitute(std::move(user), "commented_source",
                    with_trailing_newline(annotated_source.program.source_text));
  user = substitute(std::move(user), "target", with_trailing_newline(target.source_text));

  GenerationRequest req;
  req.system_prompt = templates.stage2_system;
  req.user_prompt = std::move(user);
  req.model_name = templates.model_name;
  return req;
}

// --------------------------------------------------------------------------
// Mock backend
// --------------------------------------------------------------------------

std::string MockBackend::generate(const GenerationRequest& request) {
  const std::vector<std::string> lines = split_lines(request.user_prompt);
  const std::vector<std::string> bodies = fenced_bodies(lines);
  const std::optional<std::string> marker = line_after_prefix(lines, "Comment marker:");
  const std::optional<std::vector<std::string>> comments = numbered_list(lines);

  if (!marker || marker->empty()) throw MockError("prompt has no comment marker line");

  if (bodies.size() == 1 && !comments) {
    ++stage1_calls_;
    const std::vector<std::string> blocks = blank_separated_blocks(bodies[0]);
    std::string code;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      code += *marker;
      code += " step ";
      code += std::to_string(i + 1);
      code += '\n';
      code += blocks[i];
      code += '\n';
      if (i + 1 < blocks.size()) code += '\n';
    }
    return "```\n" + code + "```\n";
  }

  if (bodies.size() >= 2 && comments) {
    ++stage2_calls_;
    const std::vector<std::string> blocks = blank_separated_blocks(bodies.back());
    const std::size_t use = std::min(blocks.size(), comments->size());
    std::string code;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i < use) {
        code += *marker;
        code += ' ';
        code += (*comments)[i];
        code += '\n';
      }
      code += blocks[i];
      code += '\n';
      if (i + 1 < blocks.size()) code += '\n';
    }
    return "```\n" + code + "```\n";
  }

  throw MockError("unrecognized prompt shape");
}

// --------------------------------------------------------------------------
// HTTP backend
// --------------------------------------------------------------------------

class HttpBackend::Gate {
 public:
  explicit Gate(int n) : sem_(std::min(std::max(n, 1), 4096)) {}
  void acquire() { sem_.acquire(); }
  void release() { sem_.release(); }

 private:
  std::counting_semaphore<4096> sem_;
};

HttpBackend::HttpBackend(BackendConfig config)
    : config_(std::move(config)), gate_(std::make_shared<Gate>(config_.max_concurrent_requests)) {}

std::string HttpBackend::cache_key(const GenerationRequest& request) {
  char temp[32];
  std::snprintf(temp, sizeof temp, "%.6g", request.temperature);
  std::string material;
  material += request.model_name;
  material += '\x1f';
  material += request.system_prompt;
  material += '\x1f';
  material += request.user_prompt;
  material += '\x1f';
  material += temp;
  return sha256_hex(material);
}

std::string HttpBackend::generate(const GenerationRequest& request) {
  const std::string key = cache_key(request);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = memory_cache_.find(key);
    if (it != memory_cache_.end()) return it->second;
  }
  if (config_.cache_dir) {
    std::ifstream in(*config_.cache_dir / (key + ".json"), std::ios::binary);
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      nlohmann::json entry = nlohmann::json::parse(ss.str(), nullptr, false);
      if (!entry.is_discarded() && entry.contains("response") && entry["response"].is_string()) {
        std::string text = entry["response"].get<std::string>();
        std::lock_guard<std::mutex> lock(cache_mutex_);
        memory_cache_[key] = text;
        return text;
      }
      log_warn("ignoring unreadable cache entry " + key);
    }
  }

  std::string text = perform(request);

  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    memory_cache_[key] = text;
  }
  if (config_.cache_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*config_.cache_dir, ec);
    nlohmann::json entry = {{"model", request.model_name},
                            {"temperature", request.temperature},
                            {"response", text}};
    const std::filesystem::path final_path = *config_.cache_dir / (key + ".json");
    const std::filesystem::path tmp_path = *config_.cache_dir / (key + ".json.tmp");
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (out) {
      out << entry.dump(2) << '\n';
      out.close();
      std::filesystem::rename(tmp_path, final_path, ec);
      if (ec) log_warn("cache write failed for " + key + ": " + ec.message());
    }
  }
  return text;
}

std::string HttpBackend::perform(const GenerationRequest& request) {
  const std::string& url = config_.endpoint_url;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw BackendError("endpoint_url must look like http(s)://host[:port]/path");
  const std::size_t path_pos = url.find('/', scheme_end + 3);
  const std::string base = url.substr(0, path_pos);
  const std::string path = path_pos == std::string::npos ? std::string("/") : url.substr(path_pos);

  nlohmann::json payload = {
      {"model", request.model_name},
      {"messages",
       nlohmann::json::array({{{"role", "system"}, {"content", request.system_prompt}},
                              {{"role", "user"}, {"content", request.user_prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens}};
  const std::string body = payload.dump();

  struct Pass {
    Gate& gate;
    explicit Pass(Gate& g) : gate(g) { gate.acquire(); }
    ~Pass() { gate.release(); }
  } pass(*gate_);

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(config_.retry_backoff_base * (1u << (attempt - 1)));
    ++network_calls_;

    httplib::Client client(base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

    httplib::Result res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      log_debug("attempt " + std::to_string(attempt + 1) + " failed: " + last_error);
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      log_debug("attempt " + std::to_string(attempt + 1) + " failed: " + last_error);
      continue;
    }
    if (res->status != 200)
      throw BackendError("HTTP " + std::to_string(res->status) + ": " + res->body);

    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) throw BackendError("non-JSON response body");
    if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty() ||
        !reply["choices"][0].contains("message") ||
        !reply["choices"][0]["message"].contains("content") ||
        !reply["choices"][0]["message"]["content"].is_string())
      throw BackendError("response missing choices[0].message.content");
    return reply["choices"][0]["message"]["content"].get<std::string>();
  }
  throw BackendError("request failed after " + std::to_string(config_.max_retries + 1) +
                     " attempts; last error: " + last_error);
}

}  // namespace snippetforge
