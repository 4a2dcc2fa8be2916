#include "snippetforge.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <string>

#include "json.hpp"
#include "snippetforge/corpus.hpp"
#include "snippetforge/eval.hpp"
#include "snippetforge/filters.hpp"
#include "snippetforge/llm_client.hpp"
#include "snippetforge/pipeline.hpp"
#include "snippetforge/schedule.hpp"

namespace {

thread_local std::string tl_last_error;

void set_error(std::string message) { tl_last_error = std::move(message); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sf_code fail(sf_code code, const std::string& message) {
  set_error(message);
  return code;
}

// Uniform exception-to-code mapping for every entry point.
template <typename Fn>
sf_code guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(SF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const snippetforge::BackendError& e) {
    return fail(SF_ERR_BACKEND, e.what());
  } catch (const snippetforge::MockError& e) {
    return fail(SF_ERR_BACKEND, e.what());
  } catch (const snippetforge::EvalError& e) {
    return fail(SF_ERR_PARSE, e.what());
  } catch (const snippetforge::LexError& e) {
    return fail(SF_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SF_ERR_PARSE, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SF_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return fail(SF_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SF_ERR_INTERNAL, "unknown error");
  }
}

sf_code require(bool ok, const char* what) {
  if (ok) return SF_OK;
  return fail(SF_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

struct sf_augment_options {
  bool mock = false;
  std::string endpoint;
  std::string api_key;
  std::string model_name;
  std::string cache_dir;
  std::string prompt_dir;
  std::string pivot = "python";
  std::string filter_json;
  int workers = 4;
  bool ordered = false;
  int max_retries = 3;
  int max_concurrent = 4;
};

extern "C" {

const char* sf_version(void) { return "0.1.0"; }

const char* sf_last_error(void) { return tl_last_error.c_str(); }

void sf_string_free(char* s) { std::free(s); }

sf_augment_options* sf_augment_options_new(void) { return new (std::nothrow) sf_augment_options; }

void sf_augment_options_free(sf_augment_options* opts) { delete opts; }

sf_code sf_augment_options_set_mock(sf_augment_options* opts, int use_mock) {
  if (sf_code c = require(opts != nullptr, "opts is NULL")) return c;
  opts->mock = use_mock != 0;
  return SF_OK;
}

sf_code sf_augment_options_set_endpoint(sf_augment_options* opts, const char* url) {
  if (sf_code c = require(opts && url, "opts/url is NULL")) return c;
  opts->endpoint = url;
  return SF_OK;
}

sf_code sf_augment_options_set_api_key(sf_augment_options* opts, const char* key) {
  if (sf_code c = require(opts && key, "opts/key is NULL")) return c;
  opts->api_key = key;
  return SF_OK;
}

sf_code sf_augment_options_set_model(sf_augment_options* opts, const char* model_name) {
  if (sf_code c = require(opts && model_name, "opts/model_name is NULL")) return c;
  opts->model_name = model_name;
  return SF_OK;
}

sf_code sf_augment_options_set_cache_dir(sf_augment_options* opts, const char* dir) {
  if (sf_code c = require(opts && dir, "opts/dir is NULL")) return c;
  opts->cache_dir = dir;
  return SF_OK;
}

sf_code sf_augment_options_set_prompt_dir(sf_augment_options* opts, const char* dir) {
  if (sf_code c = require(opts && dir, "opts/dir is NULL")) return c;
  opts->prompt_dir = dir;
  return SF_OK;
}

sf_code sf_augment_options_set_workers(sf_augment_options* opts, int workers) {
  if (sf_code c = require(opts != nullptr, "opts is NULL")) return c;
  if (sf_code c = require(workers >= 1, "workers must be >= 1")) return c;
  opts->workers = workers;
  return SF_OK;
}

sf_code sf_augment_options_set_ordered_pairs(sf_augment_options* opts, int ordered) {
  if (sf_code c = require(opts != nullptr, "opts is NULL")) return c;
  opts->ordered = ordered != 0;
  return SF_OK;
}

sf_code sf_augment_options_set_pivot(sf_augment_options* opts, const char* language) {
  if (sf_code c = require(opts && language, "opts/language is NULL")) return c;
  if (sf_code c = require(snippetforge::parse_language(language).has_value(),
                          "unknown pivot language"))
    return c;
  opts->pivot = language;
  return SF_OK;
}

sf_code sf_augment_options_set_filter_config_json(sf_augment_options* opts,
                                                  const char* json_text) {
  if (sf_code c = require(opts && json_text, "opts/json_text is NULL")) return c;
  return guarded([&]() -> sf_code {
    snippetforge::FilterConfig::from_json(json_text);  // validate eagerly
    opts->filter_json = json_text;
    return SF_OK;
  });
}

sf_code sf_augment_options_set_max_retries(sf_augment_options* opts, int retries) {
  if (sf_code c = require(opts != nullptr, "opts is NULL")) return c;
  if (sf_code c = require(retries >= 0, "retries must be >= 0")) return c;
  opts->max_retries = retries;
  return SF_OK;
}

sf_code sf_augment_options_set_max_concurrent(sf_augment_options* opts, int limit) {
  if (sf_code c = require(opts != nullptr, "opts is NULL")) return c;
  if (sf_code c = require(limit >= 1, "limit must be >= 1")) return c;
  opts->max_concurrent = limit;
  return SF_OK;
}

sf_code sf_augment_run(const sf_augment_options* opts, const char* pa_path,
                       const char* sa_out_path, char** report_json_out) {
  if (sf_code c = require(opts && pa_path && sa_out_path && report_json_out,
                          "opts/pa_path/sa_out_path/report_json_out is NULL"))
    return c;
  return guarded([&]() -> sf_code {
    using namespace snippetforge;

    const LanguageId pivot = *parse_language(opts->pivot);
    PaLoadStats stats;
    const std::vector<ProblemGroup> corpus = load_pa_corpus(pa_path, pivot, &stats);

    PipelineConfig config;
    config.pair_mode = opts->ordered ? PairMode::Ordered : PairMode::Unordered;
    config.workers = opts->workers;
    if (!opts->filter_json.empty()) config.filters = FilterConfig::from_json(opts->filter_json);
    if (!opts->prompt_dir.empty()) config.prompts = PromptTemplates::load_dir(opts->prompt_dir);
    if (!opts->model_name.empty()) config.prompts.model_name = opts->model_name;

    std::unique_ptr<TextBackend> backend;
    if (opts->mock) {
      backend = std::make_unique<MockBackend>();
    } else {
      if (opts->endpoint.empty())
        throw std::invalid_argument("no endpoint configured (or pass the mock flag)");
      BackendConfig bc;
      bc.endpoint_url = opts->endpoint;
      bc.api_key = opts->api_key;
      bc.max_retries = opts->max_retries;
      bc.max_concurrent_requests = opts->max_concurrent;
      if (!opts->cache_dir.empty()) bc.cache_dir = std::filesystem::path(opts->cache_dir);
      backend = std::make_unique<HttpBackend>(bc);
    }

    PipelineResult result = run_pipeline(corpus, *backend, config);
    write_sa_corpus(result.pairs, sa_out_path);

    *report_json_out = dup_string(result.report.to_json().dump(2));
    if (!*report_json_out) return fail(SF_ERR_INTERNAL, "out of memory");
    return SF_OK;
  });
}

sf_code sf_corpus_stats(const char* corpus_path, char** stats_json_out) {
  if (sf_code c = require(corpus_path && stats_json_out, "corpus_path/stats_json_out is NULL"))
    return c;
  return guarded([&]() -> sf_code {
    using namespace snippetforge;
    std::ifstream in(corpus_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus: " + std::string(corpus_path));

    std::size_t records = 0, malformed = 0;
    bool snippet_aligned = false, detected = false;
    std::map<std::string, std::size_t> breakdown;

    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      bool blank = true;
      for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
      if (blank) continue;
      nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
      if (rec.is_discarded() || !rec.is_object()) {
        ++malformed;
        continue;
      }
      if (!detected) {
        snippet_aligned = rec.contains("lang_a") && rec.contains("lang_b");
        detected = true;
      }
      if (snippet_aligned) {
        if (!rec.contains("lang_a") || !rec.contains("lang_b") || !rec["lang_a"].is_string() ||
            !rec["lang_b"].is_string()) {
          ++malformed;
          continue;
        }
        std::string a = rec["lang_a"].get<std::string>();
        std::string b = rec["lang_b"].get<std::string>();
        if (b < a) std::swap(a, b);
        ++breakdown[a + "-" + b];
      } else {
        if (!rec.contains("language") || !rec["language"].is_string()) {
          ++malformed;
          continue;
        }
        ++breakdown[rec["language"].get<std::string>()];
      }
      ++records;
    }

    nlohmann::ordered_json j;
    j["granularity"] = detected && snippet_aligned ? "snippet" : "program";
    j["records"] = records;
    j["malformed_lines"] = malformed;
    nlohmann::ordered_json by = nlohmann::ordered_json::object();
    for (const auto& [key, count] : breakdown) by[key] = count;
    j[detected && snippet_aligned ? "per_language_pair" : "per_language"] = std::move(by);

    *stats_json_out = dup_string(j.dump(2));
    if (!*stats_json_out) return fail(SF_ERR_INTERNAL, "out of memory");
    return SF_OK;
  });
}

sf_code sf_validate_sa(const char* sa_path, const char* filter_config_json,
                       char** report_json_out) {
  if (sf_code c = require(sa_path && report_json_out, "sa_path/report_json_out is NULL")) return c;
  return guarded([&]() -> sf_code {
    using namespace snippetforge;
    FilterConfig filters = filter_config_json ? FilterConfig::from_json(filter_config_json)
                                              : FilterConfig::defaults();
    SaLoadStats stats;
    const std::vector<SnippetPair> pairs = load_sa_corpus(sa_path, &stats);

    std::size_t useless = 0;
    for (const SnippetPair& p : pairs) {
      const FilterVerdict va = is_useless_snippet(p.snippet_a, p.lang_a, filters);
      const FilterVerdict vb = is_useless_snippet(p.snippet_b, p.lang_b, filters);
      if (!va.accepted || !vb.accepted) ++useless;
    }

    nlohmann::ordered_json j;
    j["records"] = stats.total_lines;
    j["malformed_records"] = stats.malformed_lines;
    j["useless_pairs"] = useless;
    j["ok"] = stats.malformed_lines == 0 && useless == 0;

    *report_json_out = dup_string(j.dump(2));
    if (!*report_json_out) return fail(SF_ERR_INTERNAL, "out of memory");
    return SF_OK;
  });
}

sf_code sf_pass_at_k(int n, int c, int k, double* out) {
  if (sf_code code = require(out != nullptr, "out is NULL")) return code;
  return guarded([&]() -> sf_code {
    *out = snippetforge::pass_at_k(n, c, k);
    return SF_OK;
  });
}

sf_code sf_eval_verdicts(const char* verdicts_path, int k, char** table_json_out,
                         char** table_text_out) {
  if (sf_code c = require(verdicts_path != nullptr, "verdicts_path is NULL")) return c;
  return guarded([&]() -> sf_code {
    using namespace snippetforge;
    const EvalTable table = aggregate(ingest_verdicts(verdicts_path), k);
    if (table_json_out) {
      *table_json_out = dup_string(table.to_json().dump(2));
      if (!*table_json_out) return fail(SF_ERR_INTERNAL, "out of memory");
    }
    if (table_text_out) {
      *table_text_out = dup_string(table.to_text());
      if (!*table_text_out) return fail(SF_ERR_INTERNAL, "out of memory");
    }
    return SF_OK;
  });
}

sf_code sf_schedule_plan(const char* order, const char* pa_path, const char* sa_path,
                         const char* overrides_json, char** manifest_json_out) {
  if (sf_code c = require(order && manifest_json_out, "order/manifest_json_out is NULL")) return c;
  return guarded([&]() -> sf_code {
    using namespace snippetforge;
    ScheduleOverrides overrides;
    if (overrides_json && *overrides_json)
      overrides = ScheduleOverrides::from_json(nlohmann::json::parse(overrides_json));
    const ScheduleManifest manifest =
        plan(order, pa_path ? pa_path : "", sa_path ? sa_path : "", overrides);
    *manifest_json_out = dup_string(manifest.to_json().dump(2));
    if (!*manifest_json_out) return fail(SF_ERR_INTERNAL, "out of memory");
    return SF_OK;
  });
}

sf_code sf_schedule_orders(int max_total_epochs, char** orders_json_out) {
  if (sf_code c = require(orders_json_out != nullptr, "orders_json_out is NULL")) return c;
  return guarded([&]() -> sf_code {
    nlohmann::ordered_json j = snippetforge::enumerate_orders(max_total_epochs);
    *orders_json_out = dup_string(j.dump());
    if (!*orders_json_out) return fail(SF_ERR_INTERNAL, "out of memory");
    return SF_OK;
  });
}

}  // extern "C"
