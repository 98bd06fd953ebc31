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

// Single-trial drivers: one policy against one environment for T rounds,
// returning the cumulative pseudo-regret trace.

#ifndef SIMBANDIT_SIMULATION_HPP_
#define SIMBANDIT_SIMULATION_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "simbandit/core.hpp"
#include "simbandit/environment.hpp"
#include "simbandit/graph.hpp"
#include "simbandit/policy.hpp"

namespace simbandit {

struct TrialOptions {
  double delta = 0.0;  // 0 selects 1/T
  // Called once per round with (t, pulled arm); diagnostics and tests.
  std::function<void(Round, ArmIndex)> on_pull;
};

namespace detail {

// Same draws, in the same order, as observe_neighborhood followed by
// Policy::update, without materializing the observations.
template <NeighborhoodGraph G>
void observe_into(const G& graph, std::span<const double> means,
                  ArmIndex pulled, Rng& rng, RewardSampler& sampler,
                  Policy& policy) {
  graph.for_each_neighbor(pulled, [&](ArmIndex j) {
    policy.record(j, sampler.draw(means[j], rng));
  });
  policy.record_pull(pulled);
}

}  // namespace detail

// Stationary trial over an explicit graph. `graph` is usually the similarity
// graph of `means`, but any feedback graph over the same arms is accepted.
template <NeighborhoodGraph G>
RegretTrace run_stationary_trial(const G& graph, std::span<const double> means,
                                 RewardModel model, PolicyKind kind,
                                 Round horizon, std::uint64_t reward_seed,
                                 const TrialOptions& options = {}) {
  if (is_ballooning(kind)) {
    throw InvalidInput(std::string(to_string(kind)) +
                       " is a ballooning policy");
  }
  if (graph.size() != means.size()) {
    throw InvalidInput("graph and means disagree on the arm count");
  }
  Policy policy(kind, means.size(), horizon, options.delta);
  Rng rng(reward_seed);
  RewardSampler sampler(model);
  double best = means[0];
  for (double m : means) best = std::max(best, m);
  RegretTrace trace;
  trace.cumulative.reserve(horizon);
  double cumulative = 0.0;
  for (Round t = 1; t <= horizon; ++t) {
    const ArmIndex arm = policy.select(graph, t);
    if (options.on_pull) options.on_pull(t, arm);
    detail::observe_into(graph, means, arm, rng, sampler, policy);
    cumulative += best - means[arm];
    trace.cumulative.push_back(cumulative);
  }
  return trace;
}

inline RegretTrace run_stationary_trial(const Instance& inst, PolicyKind kind,
                                        Round horizon,
                                        std::uint64_t reward_seed,
                                        const TrialOptions& options = {}) {
  return run_stationary_trial(inst.graph(), inst.means(), inst.reward_model(),
                              kind, horizon, reward_seed, options);
}

// Ballooning trial. Arrivals come from `arrival_seed`, rewards from
// `reward_seed`, so two policies given the same arrival seed face the same
// arm stream.
inline RegretTrace run_ballooning_trial(const ArrivalProcess& process,
                                        double epsilon, RewardModel model,
                                        PolicyKind kind,
                                        std::uint64_t arrival_seed,
                                        std::uint64_t reward_seed,
                                        const TrialOptions& options = {}) {
  if (!is_ballooning(kind)) {
    throw InvalidInput(std::string(to_string(kind)) +
                       " is not a ballooning policy");
  }
  BallooningEnvironment env(process, epsilon, model);
  Policy policy(kind, 0, process.horizon, options.delta);
  Rng arrivals(arrival_seed);
  Rng rng(reward_seed);
  RewardSampler sampler(model);
  RegretTrace trace;
  trace.cumulative.reserve(process.horizon);
  double cumulative = 0.0;
  for (Round t = 1; t <= process.horizon; ++t) {
    const Arrival a = env.ballooning_step(t, arrivals);
    policy.on_arrival(a.arm, env.graph());
    const ArmIndex arm = policy.select(env.graph(), t);
    if (options.on_pull) options.on_pull(t, arm);
    detail::observe_into(env.graph(), env.means(), arm, rng, sampler, policy);
    cumulative += env.pseudo_regret_increment(arm);
    trace.cumulative.push_back(cumulative);
  }
  return trace;
}

}  // namespace simbandit

#endif  // SIMBANDIT_SIMULATION_HPP_
