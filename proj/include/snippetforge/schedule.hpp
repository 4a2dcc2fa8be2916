#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace snippetforge {

// One training stage; a stage letter always means exactly one epoch.
struct GranularityStage {
  char granularity = 'P';  // 'P' program-aligned, 'S' snippet-aligned
  int epochs = 1;
  int batch_size = 0;
  int max_seq_len = 0;
  std::string dataset_path;
  // Whether the LR schedule restarts at this stage boundary. Unsettled
  // experimentally; defaults to true and is carried in the manifest so
  // trainers can flip it.
  bool lr_restart = true;
};

struct ScheduleOverrides {
  std::optional<int> pa_batch_size;
  std::optional<int> sa_batch_size;
  std::optional<int> pa_max_seq_len;
  std::optional<int> sa_max_seq_len;
  std::optional<double> learning_rate;
  std::optional<double> warmup_ratio;
  std::optional<std::string> instruction_template;
  std::optional<bool> lr_restart;

  static ScheduleOverrides from_json(const nlohmann::json& j);
};

struct ScheduleManifest {
  std::string order_string;  // e.g. "PS"
  std::vector<GranularityStage> stages;
  double learning_rate = 2e-5;
  double warmup_ratio = 0.1;
  std::string lr_schedule = "cosine";
  std::string save_policy = "last epoch of final stage";
  std::string instruction_template =
      "Translate the following {source_language} program into {target_language}.";

  nlohmann::ordered_json to_json() const;
  static ScheduleManifest from_json(const nlohmann::json& j);
};

// Builds the manifest for one granularity ordering. Defaults per stage letter:
// P -> batch 128, max sequence length 2048; S -> batch 512, max sequence
// length 1024. Throws std::invalid_argument for an empty or non-{P,S} order
// string or a missing dataset path for a used granularity.
ScheduleManifest plan(const std::string& order_string, const std::string& pa_path,
                      const std::string& sa_path, const ScheduleOverrides& overrides = {});

// All order strings over {P, S} of length 1..max_total_epochs, sorted
// lexicographically; the count is 2^(e+1) - 2.
std::vector<std::string> enumerate_orders(int max_total_epochs);

}  // namespace snippetforge
