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

// Bandit environments: stationary instances over a fixed arm set and the
// ballooning setting where one new arm arrives every round.

#ifndef SIMBANDIT_ENVIRONMENT_HPP_
#define SIMBANDIT_ENVIRONMENT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "simbandit/core.hpp"
#include "simbandit/graph.hpp"

namespace simbandit {

enum class RewardModel { bernoulli, gaussian_halfsub };

inline std::string_view to_string(RewardModel m) {
  return m == RewardModel::bernoulli ? "bernoulli" : "gaussian_halfsub";
}

inline RewardModel parse_reward_model(std::string_view s) {
  if (s == "bernoulli") return RewardModel::bernoulli;
  if (s == "gaussian_halfsub") return RewardModel::gaussian_halfsub;
  throw InvalidInput("unknown reward model '" + std::string(s) + "'");
}

// Gaussian rewards have standard deviation 1/2.
inline constexpr double kGaussianRewardStddev = 0.5;

struct Observation {
  ArmIndex arm = 0;
  double reward = 0.0;
  Round round = 0;
};

// Draws X_t(i) for one arm. Holds the normal sampler so its cached second
// variate is reused.
class RewardSampler {
 public:
  explicit RewardSampler(RewardModel model) : model_(model) {}

  double draw(double mean, Rng& rng) {
    if (model_ == RewardModel::bernoulli) {
      return uniform01(rng) < mean ? 1.0 : 0.0;
    }
    return mean + kGaussianRewardStddev * normal_(rng);
  }

  RewardModel model() const noexcept { return model_; }

 private:
  RewardModel model_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Fresh reward for every arm in N_pulled, the pulled arm included.
template <NeighborhoodGraph G>
void observe_neighborhood(const G& graph, std::span<const double> means,
                          ArmIndex pulled, Round round, Rng& rng,
                          RewardSampler& sampler,
                          std::vector<Observation>& out) {
  if (pulled >= graph.size()) throw InvalidInput("pulled arm out of range");
  out.clear();
  graph.for_each_neighbor(pulled, [&](ArmIndex j) {
    out.push_back({j, sampler.draw(means[j], rng), round});
  });
}

struct RegretTrace {
  std::vector<double> cumulative;  // after rounds 1..T
};

class Instance {
 public:
  Instance(std::vector<double> means, double epsilon, RewardModel model,
           MeanDistribution dist, std::uint64_t seed)
      : means_(std::move(means)),
        epsilon_(epsilon),
        model_(model),
        dist_(dist),
        seed_(seed) {
    if (means_.empty()) throw InvalidInput("an instance needs at least one arm");
    if (model_ == RewardModel::bernoulli) {
      for (double m : means_) {
        if (!(m >= 0.0 && m <= 1.0)) {
          throw InvalidInput("bernoulli rewards need every mean in [0, 1]");
        }
      }
    }
    graph_ = build_similarity_graph(means_, epsilon_);
    best_arm_ = static_cast<ArmIndex>(
        std::max_element(means_.begin(), means_.end()) - means_.begin());
  }

  std::size_t arm_count() const noexcept { return means_.size(); }
  std::span<const double> means() const noexcept { return means_; }
  double epsilon() const noexcept { return epsilon_; }
  RewardModel reward_model() const noexcept { return model_; }
  MeanDistribution distribution() const noexcept { return dist_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const FeedbackGraph& graph() const noexcept { return graph_; }
  ArmIndex best_arm() const noexcept { return best_arm_; }
  double best_mean() const noexcept { return means_[best_arm_]; }

 private:
  std::vector<double> means_;
  double epsilon_;
  RewardModel model_;
  MeanDistribution dist_;
  std::uint64_t seed_;
  FeedbackGraph graph_;
  ArmIndex best_arm_ = 0;
};

inline void check_pairing(MeanDistribution dist, RewardModel model) {
  if (model == RewardModel::bernoulli && !has_unit_support(dist)) {
    throw InvalidInput(std::string(to_string(dist)) +
                       " means cannot be paired with bernoulli rewards");
  }
}

// Means i.i.d. from `dist`, drawn from a generator seeded with `seed`.
inline Instance sample_instance(std::size_t arms, MeanDistribution dist,
                                double epsilon, RewardModel model,
                                std::uint64_t seed) {
  if (arms == 0) throw InvalidInput("K must be >= 1");
  check_pairing(dist, model);
  check_epsilon(epsilon);
  Rng rng(seed);
  std::vector<double> means(arms);
  for (double& m : means) m = sample_mean(dist, rng);
  return Instance(std::move(means), epsilon, model, dist, seed);
}

inline std::vector<Observation> step(const Instance& inst, ArmIndex pulled,
                                     Round round, Rng& rng,
                                     RewardSampler& sampler) {
  std::vector<Observation> out;
  observe_neighborhood(inst.graph(), inst.means(), pulled, round, rng, sampler,
                       out);
  return out;
}

inline std::vector<Observation> step(const Instance& inst, ArmIndex pulled,
                                     Round round, Rng& rng) {
  RewardSampler sampler(inst.reward_model());
  return step(inst, pulled, round, rng, sampler);
}

inline double pseudo_regret_increment(const Instance& inst, ArmIndex pulled) {
  return inst.best_mean() - inst.means()[pulled];
}

// Text form: five "key value" header lines, then one mean per line.
inline void write_instance(std::ostream& os, const Instance& inst) {
  os << "K " << inst.arm_count() << '\n'
     << "epsilon " << format_double(inst.epsilon()) << '\n'
     << "reward_model " << to_string(inst.reward_model()) << '\n'
     << "dist " << to_string(inst.distribution()) << '\n'
     << "seed " << inst.seed() << '\n';
  for (double m : inst.means()) os << format_double(m) << '\n';
}

inline Instance read_instance(std::istream& is) {
  auto field = [&](std::string_view key) {
    std::string line;
    if (!std::getline(is, line)) {
      throw InvalidInput("instance header truncated at '" + std::string(key) +
                         "'");
    }
    std::istringstream ls(line);
    std::string name, value;
    ls >> name >> value;
    if (name != key || value.empty()) {
      throw InvalidInput("expected instance header '" + std::string(key) +
                         "', got '" + line + "'");
    }
    return value;
  };
  const std::string k_text = field("K");
  const double epsilon = parse_double(field("epsilon"));
  const RewardModel model = parse_reward_model(field("reward_model"));
  const MeanDistribution dist = parse_mean_distribution(field("dist"));
  const std::uint64_t seed = std::stoull(field("seed"));
  const std::size_t k = std::stoull(k_text);
  std::vector<double> means;
  means.reserve(k);
  std::string line;
  while (means.size() < k && std::getline(is, line)) {
    if (line.empty()) continue;
    means.push_back(parse_double(line));
  }
  if (means.size() != k) throw InvalidInput("instance has fewer means than K");
  return Instance(std::move(means), epsilon, model, dist, seed);
}

struct ArrivalProcess {
  MeanDistribution dist = MeanDistribution::uniform01;
  Round horizon = 0;
};

struct Arrival {
  ArmIndex arm = 0;
  double mean = 0.0;
};

// Ballooning setting: arm a_t arrives at round t with mean drawn from the
// arrival distribution; the graph grows incrementally. Optionally keeps an
// explicit adjacency copy alongside the bucket index (small horizons only).
class BallooningEnvironment {
 public:
  BallooningEnvironment(ArrivalProcess process, double epsilon,
                        RewardModel model, bool track_adjacency = false)
      : process_(process),
        index_(epsilon),
        model_(model),
        track_adjacency_(track_adjacency) {
    check_pairing(process.dist, model);
  }

  // Round t must be the next round (1-based) and at most the horizon.
  Arrival ballooning_step(Round t, Rng& rng) {
    if (t > process_.horizon) {
      throw InvalidInput("arrival round exceeds the horizon");
    }
    if (t != index_.size() + 1) {
      throw InvalidInput("arrivals must happen once per round, in order");
    }
    const double mean = sample_mean(process_.dist, rng);
    const ArmIndex arm = index_.add(mean);
    if (track_adjacency_) {
      std::vector<ArmIndex> nbrs;
      index_.for_each_neighbor(arm, [&](ArmIndex j) {
        if (j != arm) nbrs.push_back(j);
      });
      adjacency_.add_vertex(nbrs);
    }
    if (arm == 0 || mean > index_.mean(best_arm_)) best_arm_ = arm;
    return {arm, mean};
  }

  const SimilarityIndex& graph() const noexcept { return index_; }
  const FeedbackGraph& tracked_adjacency() const noexcept {
    return adjacency_;
  }
  const ArrivalProcess& process() const noexcept { return process_; }
  RewardModel reward_model() const noexcept { return model_; }
  std::size_t arm_count() const noexcept { return index_.size(); }
  std::span<const double> means() const noexcept { return index_.means(); }
  ArmIndex best_arm() const noexcept { return best_arm_; }
  double best_mean() const { return index_.mean(best_arm_); }

  double pseudo_regret_increment(ArmIndex pulled) const {
    return best_mean() - index_.mean(pulled);
  }

 private:
  ArrivalProcess process_;
  SimilarityIndex index_;
  RewardModel model_;
  bool track_adjacency_;
  FeedbackGraph adjacency_;
  ArmIndex best_arm_ = 0;
};

}  // namespace simbandit

#endif  // SIMBANDIT_ENVIRONMENT_HPP_
