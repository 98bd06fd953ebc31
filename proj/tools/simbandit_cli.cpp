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

// simbandit: run experiment grids, print theory envelopes, estimate the
// ballooning quantities, and dump instances or their feedback graphs.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "simbandit/simbandit.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void print_estimate(const char* name, const simbandit::Estimate& e) {
  std::cout << name << ' ' << simbandit::format_double(e.mean) << " se "
            << simbandit::format_double(e.std_error) << '\n';
}

int cmd_run(const std::string& config_path, unsigned threads,
            std::optional<std::uint64_t> seed) {
  const auto config = simbandit::load_config(config_path);
  simbandit::RunOptions opt;
  opt.threads = threads;
  opt.seed_override = seed;
  const auto report = simbandit::run(config, opt);
  for (const auto& p : report.result.policies) {
    std::cout << simbandit::to_string(p.policy) << " final_regret "
              << simbandit::format_double(p.final_mean()) << " +/- "
              << simbandit::format_double(p.final_ci_half()) << " (n="
              << p.trials << ")\n";
  }
  std::cout << "wrote " << config.output_path << '\n';
  return 0;
}

int cmd_bounds(const std::string& config_path, unsigned threads,
               std::size_t replicates) {
  const auto config = simbandit::load_config(config_path);
  simbandit::RunOptions opt;
  opt.threads = threads;
  opt.envelope_replicates = replicates;
  const auto envelopes = simbandit::compute_envelopes(config, opt);
  simbandit::write_envelopes(std::cout, envelopes);
  return 0;
}

int cmd_estimate(const std::string& dist, simbandit::Round horizon,
                 double epsilon, std::size_t replicates, std::uint64_t seed,
                 unsigned threads) {
  const auto d = simbandit::parse_mean_distribution(dist);
  const auto q = simbandit::estimate_M_B_L(d, horizon, epsilon, replicates,
                                           seed, threads ? threads : 1);
  print_estimate("M", q.M);
  print_estimate("B", q.B);
  print_estimate("L", q.L);
  std::cout << "H_T " << simbandit::format_double(simbandit::harmonic_number(horizon))
            << '\n';
  return 0;
}

simbandit::Instance load_or_sample(const std::string& path, std::size_t k,
                                   const std::string& dist, double epsilon,
                                   const std::string& model,
                                   std::uint64_t seed) {
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw simbandit::InvalidInput("cannot open instance '" + path + "'");
    return simbandit::read_instance(in);
  }
  return simbandit::sample_instance(
      k, simbandit::parse_mean_distribution(dist), epsilon,
      simbandit::parse_reward_model(model), seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-feedback bandit simulations with similar arms"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed_override;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "Config file (JSON)")->required();
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run->add_option("--seed", seed_override, "Override master_seed");

  std::size_t bound_replicates = 100;
  auto* bounds = app.add_subcommand("bounds", "Print theory envelope values");
  bounds->add_option("--config", config_path, "Config file (JSON)")->required();
  bounds->add_option("--threads", threads, "Worker threads (0 = all cores)");
  bounds->add_option("--replicates", bound_replicates,
                     "Monte Carlo replicates for M and B (ballooning)");

  std::string dist;
  simbandit::Round horizon = 0;
  double epsilon = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  auto* estimate = app.add_subcommand("estimate", "Estimate M, B and L");
  estimate->add_option("--dist", dist, "uniform01 | gaussian01 | half_triangle")
      ->required();
  estimate->add_option("--T", horizon, "Horizon")->required();
  estimate->add_option("--epsilon", epsilon, "Similarity threshold")->required();
  estimate->add_option("--replicates", replicates, "Arrival streams")->required();
  estimate->add_option("--seed", seed, "Seed");
  estimate->add_option("--threads", threads, "Worker threads");

  std::string instance_path;
  std::size_t arms = 0;
  std::string model = "bernoulli";
  auto add_instance_options = [&](CLI::App* cmd) {
    cmd->add_option("--K", arms, "Arm count");
    cmd->add_option("--dist", dist, "Mean distribution");
    cmd->add_option("--epsilon", epsilon, "Similarity threshold");
    cmd->add_option("--reward-model", model, "bernoulli | gaussian_halfsub");
    cmd->add_option("--seed", seed, "Seed");
  };
  auto* instance = app.add_subcommand("instance", "Sample and print an instance");
  add_instance_options(instance);
  auto* graph = app.add_subcommand("graph", "Print an instance's edge list");
  graph->add_option("--instance", instance_path, "Instance file");
  add_instance_options(graph);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, threads, seed_override);
    if (*bounds) return cmd_bounds(config_path, threads, bound_replicates);
    if (*estimate) {
      return cmd_estimate(dist, horizon, epsilon, replicates, seed, threads);
    }
    if (*instance) {
      simbandit::write_instance(
          std::cout, load_or_sample("", arms, dist, epsilon, model, seed));
      return 0;
    }
    if (*graph) {
      const auto inst =
          load_or_sample(instance_path, arms, dist, epsilon, model, seed);
      simbandit::write_edge_list(std::cout, inst.graph());
      return 0;
    }
  } catch (const simbandit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const simbandit::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
