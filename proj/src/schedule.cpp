#include "snippetforge/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace snippetforge {

ScheduleOverrides ScheduleOverrides::from_json(const nlohmann::json& j) {
  ScheduleOverrides o;
  if (j.contains("pa_batch_size")) o.pa_batch_size = j["pa_batch_size"].get<int>();
  if (j.contains("sa_batch_size")) o.sa_batch_size = j["sa_batch_size"].get<int>();
  if (j.contains("pa_max_seq_len")) o.pa_max_seq_len = j["pa_max_seq_len"].get<int>();
  if (j.contains("sa_max_seq_len")) o.sa_max_seq_len = j["sa_max_seq_len"].get<int>();
  if (j.contains("learning_rate")) o.learning_rate = j["learning_rate"].get<double>();
  if (j.contains("warmup_ratio")) o.warmup_ratio = j["warmup_ratio"].get<double>();
  if (j.contains("instruction_template"))
    o.instruction_template = j["instruction_template"].get<std::string>();
  if (j.contains("lr_restart")) o.lr_restart = j["lr_restart"].get<bool>();
  return o;
}

nlohmann::ordered_json ScheduleManifest::to_json() const {
  nlohmann::ordered_json j;
  j["order_string"] = order_string;
  nlohmann::ordered_json stage_list = nlohmann::ordered_json::array();
  for (const GranularityStage& s : stages) {
    nlohmann::ordered_json stage;
    stage["granularity"] = std::string(1, s.granularity);
    stage["epochs"] = s.epochs;
    stage["batch_size"] = s.batch_size;
    stage["max_seq_len"] = s.max_seq_len;
    stage["dataset_path"] = s.dataset_path;
    stage["lr_restart"] = s.lr_restart;
    stage_list.push_back(std::move(stage));
  }
  j["stages"] = std::move(stage_list);
  j["learning_rate"] = learning_rate;
  j["warmup_ratio"] = warmup_ratio;
  j["lr_schedule"] = lr_schedule;
  j["save_policy"] = save_policy;
  j["instruction_template"] = instruction_template;
  return j;
}

ScheduleManifest ScheduleManifest::from_json(const nlohmann::json& j) {
  ScheduleManifest m;
  m.order_string = j.at("order_string").get<std::string>();
  for (const nlohmann::json& s : j.at("stages")) {
    GranularityStage stage;
    const std::string g = s.at("granularity").get<std::string>();
    if (g.size() != 1 || (g[0] != 'P' && g[0] != 'S'))
      throw std::invalid_argument("stage granularity must be \"P\" or \"S\"");
    stage.granularity = g[0];
    stage.epochs = s.at("epochs").get<int>();
    stage.batch_size = s.at("batch_size").get<int>();
    stage.max_seq_len = s.at("max_seq_len").get<int>();
    stage.dataset_path = s.at("dataset_path").get<std::string>();
    stage.lr_restart = s.at("lr_restart").get<bool>();
    m.stages.push_back(std::move(stage));
  }
  m.learning_rate = j.at("learning_rate").get<double>();
  m.warmup_ratio = j.at("warmup_ratio").get<double>();
  m.lr_schedule = j.at("lr_schedule").get<std::string>();
  m.save_policy = j.at("save_policy").get<std::string>();
  m.instruction_template = j.at("instruction_template").get<std::string>();
  return m;
}

ScheduleManifest plan(const std::string& order_string, const std::string& pa_path,
                      const std::string& sa_path, const ScheduleOverrides& overrides) {
  if (order_string.empty()) throw std::invalid_argument("order string must be non-empty");
  for (char c : order_string)
    if (c != 'P' && c != 'S')
      throw std::invalid_argument(std::string("invalid granularity letter '") + c +
                                  "' (expected P or S)");
  if (order_string.find('P') != std::string::npos && pa_path.empty())
    throw std::invalid_argument("order uses P stages but no program-aligned dataset path given");
  if (order_string.find('S') != std::string::npos && sa_path.empty())
    throw std::invalid_argument("order uses S stages but no snippet-aligned dataset path given");

  ScheduleManifest m;
  m.order_string = order_string;
  if (overrides.learning_rate) m.learning_rate = *overrides.learning_rate;
  if (overrides.warmup_ratio) m.warmup_ratio = *overrides.warmup_ratio;
  if (overrides.instruction_template) m.instruction_template = *overrides.instruction_template;

  for (char c : order_string) {
    GranularityStage stage;
    stage.granularity = c;
    if (c == 'P') {
      stage.batch_size = overrides.pa_batch_size.value_or(128);
      stage.max_seq_len = overrides.pa_max_seq_len.value_or(2048);
      stage.dataset_path = pa_path;
    } else {
      stage.batch_size = overrides.sa_batch_size.value_or(512);
      stage.max_seq_len = overrides.sa_max_seq_len.value_or(1024);
      stage.dataset_path = sa_path;
    }
    if (overrides.lr_restart) stage.lr_restart = *overrides.lr_restart;
    m.stages.push_back(std::move(stage));
  }
  return m;
}

std::vector<std::string> enumerate_orders(int max_total_epochs) {
  if (max_total_epochs < 1) throw std::invalid_argument("max_total_epochs must be >= 1");
  std::vector<std::string> orders;
  for (int len = 1; len <= max_total_epochs; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::string s(static_cast<std::size_t>(len), 'P');
      for (int i = 0; i < len; ++i)
        if (bits & (1u << i)) s[static_cast<std::size_t>(i)] = 'S';
      orders.push_back(std::move(s));
    }
  }
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace snippetforge
