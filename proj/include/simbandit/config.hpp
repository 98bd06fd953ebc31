// Copyright 2026 The simbandit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment configuration: a flat JSON object whose keys are exactly the
// fields below. Unknown keys are rejected.

#ifndef SIMBANDIT_CONFIG_HPP_
#define SIMBANDIT_CONFIG_HPP_

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simbandit/core.hpp"
#include "simbandit/environment.hpp"
#include "simbandit/policy.hpp"

namespace simbandit {

enum class Setting { stationary, ballooning, stationary_standard_graph };

inline std::string_view to_string(Setting s) {
  switch (s) {
    case Setting::stationary:
      return "stationary";
    case Setting::ballooning:
      return "ballooning";
    case Setting::stationary_standard_graph:
      return "stationary-standard-graph";
  }
  return "?";
}

inline Setting parse_setting(std::string_view s) {
  if (s == "stationary") return Setting::stationary;
  if (s == "ballooning") return Setting::ballooning;
  if (s == "stationary-standard-graph") {
    return Setting::stationary_standard_graph;
  }
  throw ConfigError("unknown setting '" + std::string(s) + "'");
}

struct ExperimentConfig {
  Setting setting = Setting::stationary;
  Round T = 0;
  std::size_t K = 0;  // stationary settings only
  double epsilon = 0.0;
  MeanDistribution dist = MeanDistribution::uniform01;
  RewardModel reward_model = RewardModel::bernoulli;
  std::vector<PolicyKind> policies;
  std::size_t instances = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;
  Round record_every = 100;
  double delta = 0.0;           // optional; 0 selects 1/T
  bool couple_rewards = false;  // optional; one reward stream per instance
};

// Throws ConfigError when a field is out of range or the policies do not
// match the setting.
inline void validate(const ExperimentConfig& c) {
  if (c.T < 1) throw ConfigError("T must be >= 1");
  if (c.setting != Setting::ballooning && c.K < 1) {
    throw ConfigError("K must be >= 1 for stationary settings");
  }
  if (!(c.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (c.instances < 1) throw ConfigError("instances must be >= 1");
  if (c.policies.empty()) throw ConfigError("policies must be non-empty");
  if (c.record_every < 1 || (c.record_every != 1 && c.T % c.record_every != 0)) {
    throw ConfigError("record_every must divide T");
  }
  if (!(c.delta >= 0.0 && c.delta <= 1.0)) {
    throw ConfigError("delta must lie in (0, 1]");
  }
  if (c.reward_model == RewardModel::bernoulli && !has_unit_support(c.dist)) {
    throw ConfigError(std::string(to_string(c.dist)) +
                      " means cannot be paired with bernoulli rewards");
  }
  std::set<PolicyKind> seen;
  for (PolicyKind p : c.policies) {
    if (!seen.insert(p).second) {
      throw ConfigError("policy '" + std::string(to_string(p)) +
                        "' listed twice");
    }
    const bool bl_setting = c.setting == Setting::ballooning;
    if (is_ballooning(p) != bl_setting) {
      throw ConfigError("policy '" + std::string(to_string(p)) +
                        "' is not valid for setting '" +
                        std::string(to_string(c.setting)) + "'");
    }
  }
}

inline ExperimentConfig parse_config(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "setting",   "T",           "K",         "epsilon",
      "dist",      "reward_model", "policies",  "instances",
      "master_seed", "output_path", "record_every", "delta",
      "couple_rewards"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto required = [&](const char* key) -> const json& {
    if (!doc.contains(key)) {
      throw ConfigError(std::string("missing config key '") + key + "'");
    }
    return doc.at(key);
  };

  ExperimentConfig c;
  try {
    c.setting = parse_setting(required("setting").get<std::string>());
    c.T = required("T").get<Round>();
    if (doc.contains("K")) c.K = doc.at("K").get<std::size_t>();
    c.epsilon = required("epsilon").get<double>();
    c.dist = parse_mean_distribution(required("dist").get<std::string>());
    c.reward_model =
        parse_reward_model(required("reward_model").get<std::string>());
    const json& policies = required("policies");
    if (!policies.is_array()) throw ConfigError("policies must be an array");
    for (const auto& p : policies) {
      c.policies.push_back(parse_policy_kind(p.get<std::string>()));
    }
    c.instances = required("instances").get<std::size_t>();
    c.master_seed = required("master_seed").get<std::uint64_t>();
    c.output_path = required("output_path").get<std::string>();
    if (doc.contains("record_every")) {
      c.record_every = doc.at("record_every").get<Round>();
    }
    if (doc.contains("delta")) c.delta = doc.at("delta").get<double>();
    if (doc.contains("couple_rewards")) {
      c.couple_rewards = doc.at("couple_rewards").get<bool>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  if (c.setting != Setting::ballooning && !doc.contains("K")) {
    throw ConfigError("missing config key 'K'");
  }
  validate(c);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace simbandit

#endif  // SIMBANDIT_CONFIG_HPP_
