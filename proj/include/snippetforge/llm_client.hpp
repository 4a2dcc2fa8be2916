#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "snippetforge/comment_lexer.hpp"
#include "snippetforge/language.hpp"

namespace snippetforge {

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerationRequest {
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;  // reproducibility first
  int max_tokens = 4096;
  std::string model_name;
};

struct BackendConfig {
  std::string endpoint_url;
  std::string api_key;  // callers resolve SNIPPET_FORGE_API_KEY
  int max_retries = 3;
  std::chrono::milliseconds retry_backoff_base{250};
  int max_concurrent_requests = 4;
  std::optional<std::filesystem::path> cache_dir;
};

class TextBackend {
 public:
  virtual ~TextBackend() = default;
  virtual std::string generate(const GenerationRequest& request) = 0;
};

// Chat-completion JSON-over-HTTP client: bearer auth, bounded retries with
// exponential backoff on 429/5xx/transport errors, a concurrency cap, and an
// optional content-hash disk cache (one JSON file per key).
class HttpBackend : public TextBackend {
 public:
  explicit HttpBackend(BackendConfig config);
  std::string generate(const GenerationRequest& request) override;

  std::uint64_t network_calls() const { return network_calls_.load(); }
  static std::string cache_key(const GenerationRequest& request);

 private:
  std::string perform(const GenerationRequest& request);

  BackendConfig config_;
  std::atomic<std::uint64_t> network_calls_{0};
  std::mutex cache_mutex_;
  std::unordered_map<std::string, std::string> memory_cache_;
  class Gate;
  std::shared_ptr<Gate> gate_;
};

// Deterministic offline stand-in. Recognizes the two prompt shapes built
// below: the comment-insertion prompt (one fenced program plus a
// "Comment marker:" line) gets "<marker> step N" inserted before every
// blank-line-separated block; the rewrite prompt (two fenced programs plus a
// "Comments (in order):" list) gets the listed comments replayed onto the
// target's blocks, truncating when the target has fewer blocks.
class MockBackend : public TextBackend {
 public:
  std::string generate(const GenerationRequest& request) override;

  std::uint64_t stage1_calls() const { return stage1_calls_.load(); }
  std::uint64_t stage2_calls() const { return stage2_calls_.load(); }

 private:
  std::atomic<std::uint64_t> stage1_calls_{0};
  std::atomic<std::uint64_t> stage2_calls_{0};
};

// Prompt text is experiment configuration: each template can be overridden by
// a file in a prompt directory; {{placeholders}} are substituted verbatim.
struct PromptTemplates {
  std::string stage1_system;
  std::string stage1_user;
  std::string stage2_system;
  std::string stage2_user;
  std::string model_name = "deepseek-chat";

  static PromptTemplates defaults();
  // Overrides from <dir>/stage1_system.txt, stage1_user.txt, stage2_system.txt,
  // stage2_user.txt, model_name.txt; missing files keep the default.
  static PromptTemplates load_dir(const std::filesystem::path& dir);
};

GenerationRequest build_stage1_prompt(const Program& source,
                                      const PromptTemplates& templates = PromptTemplates::defaults());

// Requires annotated_source.comment_count() >= 1.
GenerationRequest build_stage2_prompt(const AnnotatedProgram& annotated_source,
                                      const Program& target,
                                      const PromptTemplates& templates = PromptTemplates::defaults());

}  // namespace snippetforge
