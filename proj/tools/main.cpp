// snippet-forge: command-line front end for the snippetforge library.
//
// Exit codes: 0 success, 1 fatal configuration or I/O error, 2 completed but
// with recorded rejections above --threshold.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "snippetforge.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { sf_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

[[noreturn]] void die(const std::string& message) {
  std::cerr << "snippet-forge: " << message << "\n";
  std::exit(1);
}

void check(sf_code code) {
  if (code != SF_OK) die(sf_last_error());
}

// Writes via a temp file + rename so a crash never leaves a partial artifact.
void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) die("cannot open for writing: " + tmp);
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
    out.flush();
    if (!out) die("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) die("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    write_file_atomic(out_path, content);
  }
}

// Pre-scans argv for --config and loads it, so file values can become option
// defaults before parsing; explicit flags then win automatically.
nlohmann::json load_config_file(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
  }
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) die("config file is not a JSON object: " + path);
  return j;
}

// Applies "<section>.<key>" or global "<key>" from the config file as the
// option's default value.
void apply_config(CLI::App* cmd, const nlohmann::json& config, const std::string& section) {
  auto apply = [&](const nlohmann::json& obj) {
    for (CLI::Option* opt : cmd->get_options()) {
      const std::string name = opt->get_lnames().empty() ? "" : opt->get_lnames().front();
      if (name.empty() || name == "config" || !obj.contains(name)) continue;
      const nlohmann::json& v = obj.at(name);
      if (v.is_boolean()) {
        if (v.get<bool>()) opt->default_val("true");
      } else if (v.is_string()) {
        opt->default_val(v.get<std::string>());
      } else {
        opt->default_val(v.dump());
      }
    }
  };
  apply(config);
  if (config.contains(section) && config.at(section).is_object()) apply(config.at(section));
}

int sum_rejections(const std::string& report_json) {
  nlohmann::json j = nlohmann::json::parse(report_json, nullptr, false);
  if (j.is_discarded() || !j.contains("rejected")) return 0;
  int total = 0;
  for (const auto& [_, v] : j.at("rejected").items()) total += v.get<int>();
  return total;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snippet-alignment corpus toolchain"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  const nlohmann::json config = load_config_file(argc, argv);

  // ---- augment ----
  auto* augment = app.add_subcommand("augment", "build snippet pairs from a program corpus");
  std::string pa_in, sa_out, report_out, endpoint, api_key, model, cache_dir, prompt_dir;
  std::string pivot = "python", filter_json_path;
  bool mock = false, ordered = false, resume = false;
  int workers = 4, threshold = 0, max_retries = 3, max_concurrent = 4;
  augment->add_option("--in", pa_in, "program-aligned JSONL input")->required();
  augment->add_option("--out", sa_out, "snippet-aligned JSONL output")->required();
  augment->add_option("--report", report_out, "write the run report JSON here");
  augment->add_flag("--mock", mock, "use the deterministic offline backend");
  augment->add_option("--endpoint", endpoint, "chat-completion endpoint URL");
  augment->add_option("--api-key", api_key, "API key (default: $SNIPPET_FORGE_API_KEY)");
  augment->add_option("--model", model, "model name sent to the endpoint");
  augment->add_option("--cache-dir", cache_dir, "response cache directory");
  augment->add_option("--prompt-dir", prompt_dir, "prompt template override directory");
  augment->add_option("--pivot", pivot, "pivot language (python|java|cpp)");
  augment->add_option("--filters", filter_json_path, "JSON file overriding usefulness filters");
  augment->add_option("--workers", workers, "worker thread count");
  augment->add_option("--threshold", threshold, "max rejections before exit code 2");
  augment->add_option("--max-retries", max_retries, "HTTP retry limit");
  augment->add_option("--max-concurrent", max_concurrent, "HTTP concurrency limit");
  augment->add_flag("--ordered", ordered, "emit both orientations of each pair");
  augment->add_flag("--resume", resume, "reuse cached responses (requires --cache-dir)");
  apply_config(augment, config, "augment");

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "count records per language (pair)");
  std::string stats_in, stats_out;
  stats->add_option("--in", stats_in, "corpus JSONL (program- or snippet-aligned)")->required();
  stats->add_option("--out", stats_out, "write JSON here instead of stdout");
  apply_config(stats, config, "stats");

  // ---- passk ----
  auto* passk = app.add_subcommand("passk", "aggregate execution verdicts into pass@k");
  std::string verdicts_in, passk_out;
  int k = 1;
  bool passk_json = false;
  passk->add_option("--verdicts", verdicts_in, "verdict JSONL input")->required();
  passk->add_option("--k", k, "k for pass@k");
  passk->add_flag("--json", passk_json, "emit JSON instead of the text table");
  passk->add_option("--out", passk_out, "write the table here instead of stdout");
  apply_config(passk, config, "passk");

  // ---- plan ----
  auto* plan = app.add_subcommand("plan", "emit a training-schedule manifest");
  std::string order, plan_pa, plan_sa, overrides_path, plan_out;
  bool list_orders = false;
  int max_epochs = 2;
  plan->add_option("--order", order, "stage order string over {P,S}, e.g. PS");
  plan->add_option("--pa", plan_pa, "program-aligned dataset path");
  plan->add_option("--sa", plan_sa, "snippet-aligned dataset path");
  plan->add_option("--overrides", overrides_path, "JSON file with hyperparameter overrides");
  plan->add_flag("--list", list_orders, "list every order up to --max-epochs");
  plan->add_option("--max-epochs", max_epochs, "epoch bound for --list");
  plan->add_option("--out", plan_out, "write the manifest here instead of stdout");
  apply_config(plan, config, "plan");

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "re-check an existing snippet-aligned file");
  std::string validate_in, validate_filters, validate_out;
  int validate_threshold = 0;
  validate->add_option("--in", validate_in, "snippet-aligned JSONL input")->required();
  validate->add_option("--filters", validate_filters, "JSON file overriding usefulness filters");
  validate->add_option("--threshold", validate_threshold, "max flagged pairs before exit code 2");
  validate->add_option("--out", validate_out, "write the report here instead of stdout");
  apply_config(validate, config, "validate");

  CLI11_PARSE(app, argc, argv);

  auto read_file = [](const std::string& path) -> std::string {
    std::ifstream in(path, std::ios::binary);
    if (!in) die("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  if (augment->parsed()) {
    if (resume && cache_dir.empty()) die("--resume requires --cache-dir");
    std::unique_ptr<sf_augment_options, decltype(&sf_augment_options_free)> opts(
        sf_augment_options_new(), sf_augment_options_free);
    if (!opts) die("out of memory");
    check(sf_augment_options_set_mock(opts.get(), mock ? 1 : 0));
    if (!endpoint.empty()) check(sf_augment_options_set_endpoint(opts.get(), endpoint.c_str()));
    if (api_key.empty())
      if (const char* env = std::getenv("SNIPPET_FORGE_API_KEY")) api_key = env;
    if (!api_key.empty()) check(sf_augment_options_set_api_key(opts.get(), api_key.c_str()));
    if (!model.empty()) check(sf_augment_options_set_model(opts.get(), model.c_str()));
    if (!cache_dir.empty()) check(sf_augment_options_set_cache_dir(opts.get(), cache_dir.c_str()));
    if (!prompt_dir.empty())
      check(sf_augment_options_set_prompt_dir(opts.get(), prompt_dir.c_str()));
    check(sf_augment_options_set_pivot(opts.get(), pivot.c_str()));
    if (!filter_json_path.empty())
      check(sf_augment_options_set_filter_config_json(opts.get(),
                                                      read_file(filter_json_path).c_str()));
    check(sf_augment_options_set_workers(opts.get(), workers));
    check(sf_augment_options_set_ordered_pairs(opts.get(), ordered ? 1 : 0));
    check(sf_augment_options_set_max_retries(opts.get(), max_retries));
    check(sf_augment_options_set_max_concurrent(opts.get(), max_concurrent));

    char* report_raw = nullptr;
    check(sf_augment_run(opts.get(), pa_in.c_str(), sa_out.c_str(), &report_raw));
    OwnedString report(report_raw);
    if (!report_out.empty())
      write_file_atomic(report_out, report.get());
    else
      std::cout << report.get() << "\n";
    return sum_rejections(report.get()) > threshold ? 2 : 0;
  }

  if (stats->parsed()) {
    char* out_raw = nullptr;
    check(sf_corpus_stats(stats_in.c_str(), &out_raw));
    OwnedString out(out_raw);
    emit(out.get(), stats_out);
    return 0;
  }

  if (passk->parsed()) {
    char* json_raw = nullptr;
    char* text_raw = nullptr;
    check(sf_eval_verdicts(verdicts_in.c_str(), k, &json_raw, &text_raw));
    OwnedString json_str(json_raw), text_str(text_raw);
    emit(passk_json ? json_str.get() : text_str.get(), passk_out);
    return 0;
  }

  if (plan->parsed()) {
    if (list_orders) {
      char* orders_raw = nullptr;
      check(sf_schedule_orders(max_epochs, &orders_raw));
      OwnedString orders(orders_raw);
      emit(orders.get(), plan_out);
      return 0;
    }
    if (order.empty()) die("either --order or --list is required");
    std::string overrides_json;
    if (!overrides_path.empty()) overrides_json = read_file(overrides_path);
    char* manifest_raw = nullptr;
    check(sf_schedule_plan(order.c_str(), plan_pa.c_str(), plan_sa.c_str(),
                           overrides_json.empty() ? nullptr : overrides_json.c_str(),
                           &manifest_raw));
    OwnedString manifest(manifest_raw);
    emit(manifest.get(), plan_out);
    return 0;
  }

  if (validate->parsed()) {
    std::string filters_json;
    if (!validate_filters.empty()) filters_json = read_file(validate_filters);
    char* report_raw = nullptr;
    check(sf_validate_sa(validate_in.c_str(),
                         filters_json.empty() ? nullptr : filters_json.c_str(), &report_raw));
    OwnedString report(report_raw);
    emit(report.get(), validate_out);
    nlohmann::json j = nlohmann::json::parse(report.get(), nullptr, false);
    const int flagged = j.is_discarded()
                            ? 0
                            : j.value("useless_pairs", 0) + j.value("malformed_records", 0);
    return flagged > validate_threshold ? 2 : 0;
  }

  return 0;
}
