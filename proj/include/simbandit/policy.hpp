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

// Selection rules over graph feedback: UCB-N, the two-level D-UCB and C-UCB
// rules, and their ballooning variants with an online independent set.

#ifndef SIMBANDIT_POLICY_HPP_
#define SIMBANDIT_POLICY_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "simbandit/core.hpp"
#include "simbandit/environment.hpp"
#include "simbandit/graph.hpp"

namespace simbandit {

enum class PolicyKind { ucb_n, d_ucb, c_ucb, d_ucb_bl, c_ucb_bl };

inline std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::ucb_n:
      return "ucb-n";
    case PolicyKind::d_ucb:
      return "d-ucb";
    case PolicyKind::c_ucb:
      return "c-ucb";
    case PolicyKind::d_ucb_bl:
      return "d-ucb-bl";
    case PolicyKind::c_ucb_bl:
      return "c-ucb-bl";
  }
  return "?";
}

inline PolicyKind parse_policy_kind(std::string_view s) {
  for (PolicyKind k : {PolicyKind::ucb_n, PolicyKind::d_ucb, PolicyKind::c_ucb,
                       PolicyKind::d_ucb_bl, PolicyKind::c_ucb_bl}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidInput("unknown policy tag '" + std::string(s) + "'");
}

constexpr bool is_ballooning(PolicyKind k) noexcept {
  return k == PolicyKind::d_ucb_bl || k == PolicyKind::c_ucb_bl;
}

enum class IndexKind { ucb, lcb };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log(sqrt(2) T / delta), shared by every index.
inline double confidence_log(Round horizon, double delta) {
  if (horizon < 1) throw InvalidInput("horizon must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InvalidInput("delta must lie in (0, 1]");
  }
  return std::log(std::numbers::sqrt2 * static_cast<double>(horizon) / delta);
}

// Confidence radius sqrt(log(sqrt(2) T / delta) / O).
inline double radius(Round horizon, double delta, std::uint64_t observations) {
  if (observations == 0) {
    throw InvalidInput("confidence radius undefined for an unobserved arm");
  }
  return std::sqrt(confidence_log(horizon, delta) /
                   static_cast<double>(observations));
}

// Per-arm statistics plus the independent set. Index values are cached and
// refreshed whenever an arm's observation count changes; unobserved arms
// carry +inf (ucb) and -inf (lcb).
struct ArmStats {
  std::uint64_t observations = 0;  // O(i)
  double mean = 0.0;               // empirical mean, valid if O > 0
  double ucb = kInf;
  double lcb = -kInf;
};

struct PolicyState {
  PolicyState(std::size_t arms, Round horizon_, double delta_ = 0.0)
      : horizon(horizon_),
        delta(delta_ > 0.0 ? delta_ : 1.0 / static_cast<double>(horizon_)),
        log_term(confidence_log(horizon, delta)) {
    for (std::size_t i = 0; i < arms; ++i) add_arm();
  }

  std::size_t size() const noexcept { return stats.size(); }

  ArmIndex add_arm() {
    stats.emplace_back();
    pulls.push_back(0);
    return static_cast<ArmIndex>(stats.size() - 1);
  }

  std::uint64_t observations(ArmIndex i) const { return stats.at(i).observations; }
  double mean(ArmIndex i) const { return stats.at(i).mean; }
  double ucb(ArmIndex i) const { return stats.at(i).ucb; }
  double lcb(ArmIndex i) const { return stats.at(i).lcb; }

  double index(ArmIndex i, IndexKind kind) const {
    return kind == IndexKind::ucb ? ucb(i) : lcb(i);
  }

  void refresh_index(ArmIndex i) {
    ArmStats& a = stats[i];
    const double r = std::sqrt(log_term / static_cast<double>(a.observations));
    a.ucb = a.mean + r;
    a.lcb = a.mean - r;
  }

  // Overwrites one arm's statistics; for setting up scenarios directly.
  void set_statistics(ArmIndex i, std::uint64_t observed, double mu_bar) {
    ArmStats& a = stats.at(i);
    a.observations = observed;
    a.mean = mu_bar;
    if (observed == 0) {
      a.ucb = kInf;
      a.lcb = -kInf;
    } else {
      refresh_index(i);
    }
  }

  Round horizon;
  double delta;
  double log_term;
  std::vector<ArmStats> stats;
  std::vector<std::uint64_t> pulls;  // k(i); diagnostics only
  std::vector<ArmIndex> independent_set;
  ArmIndex first_unobserved = 0;  // cursor; O never decreases
  ArmIndex last_leader = kNoArm;  // j_t of the latest two-level decision
};

namespace detail {

struct Argmax {
  ArmIndex arm = kNoArm;
  double value = -kInf;

  // Ties go to the lowest arm index.
  void offer(ArmIndex a, double v) {
    if (arm == kNoArm || v > value || (v == value && a < arm)) {
      arm = a;
      value = v;
    }
  }
};

inline void require_arms(const PolicyState& s) {
  if (s.size() == 0) throw InvalidInput("policy has no arms to select from");
}

inline ArmIndex next_unobserved(PolicyState& s) {
  while (s.first_unobserved < s.size() &&
         s.stats[s.first_unobserved].observations > 0) {
    ++s.first_unobserved;
  }
  return s.first_unobserved < s.size() ? s.first_unobserved : kNoArm;
}

inline ArmIndex leader(PolicyState& s) {
  Argmax best;
  for (ArmIndex j : s.independent_set) best.offer(j, s.stats[j].ucb);
  s.last_leader = best.arm;
  return best.arm;
}

template <NeighborhoodGraph G>
ArmIndex best_in_neighborhood(const PolicyState& s, const G& g, ArmIndex j,
                              IndexKind kind) {
  const double ArmStats::*field =
      kind == IndexKind::ucb ? &ArmStats::ucb : &ArmStats::lcb;
  Argmax best;
  g.for_each_neighbor(j, [&](ArmIndex i) { best.offer(i, s.stats[i].*field); });
  return best.arm;
}

// Stationary two-level rule. While unobserved arms remain, the lowest-index
// one is pulled and joins the independent set.
template <NeighborhoodGraph G>
ArmIndex two_level_select(PolicyState& s, const G& g, IndexKind inner) {
  require_arms(s);
  if (const ArmIndex u = next_unobserved(s); u != kNoArm) {
    s.independent_set.push_back(u);
    return u;
  }
  return best_in_neighborhood(s, g, leader(s), inner);
}

}  // namespace detail

template <NeighborhoodGraph G>
ArmIndex ducb_select(PolicyState& s, const G& g, Round /*t*/) {
  return detail::two_level_select(s, g, IndexKind::ucb);
}

template <NeighborhoodGraph G>
ArmIndex cucb_select(PolicyState& s, const G& g, Round /*t*/) {
  return detail::two_level_select(s, g, IndexKind::lcb);
}

template <NeighborhoodGraph G>
ArmIndex ucbn_select(PolicyState& s, const G& /*g*/, Round /*t*/) {
  detail::require_arms(s);
  if (const ArmIndex u = detail::next_unobserved(s); u != kNoArm) return u;
  detail::Argmax best;
  for (ArmIndex i = 0; i < s.size(); ++i) best.offer(i, s.stats[i].ucb);
  return best.arm;
}

// Adds the newly arrived arm to the independent set iff it has no neighbor
// there. Returns whether it was added.
template <NeighborhoodGraph G>
bool bl_update_independent_set(PolicyState& s, ArmIndex arrived, const G& g) {
  for (ArmIndex m : s.independent_set) {
    if (g.adjacent(arrived, m)) return false;
  }
  s.independent_set.push_back(arrived);
  return true;
}

template <NeighborhoodGraph G>
ArmIndex ducb_bl_select(PolicyState& s, const G& g, Round /*t*/) {
  detail::require_arms(s);
  return detail::best_in_neighborhood(s, g, detail::leader(s), IndexKind::ucb);
}

template <NeighborhoodGraph G>
ArmIndex cucb_bl_select(PolicyState& s, const G& g, Round /*t*/) {
  detail::require_arms(s);
  return detail::best_in_neighborhood(s, g, detail::leader(s), IndexKind::lcb);
}

// O(i) += 1, running mean and refreshed indices for one observed reward.
inline void record_observation(PolicyState& s, ArmIndex i, double reward) {
  ArmStats& a = s.stats[i];
  const auto n = ++a.observations;
  a.mean += (reward - a.mean) / static_cast<double>(n);
  const double r = std::sqrt(s.log_term / static_cast<double>(n));
  a.ucb = a.mean + r;
  a.lcb = a.mean - r;
}

// record_observation for each observed arm; k += 1 for the pulled arm.
inline void update(PolicyState& s, std::span<const Observation> observations,
                   ArmIndex pulled) {
  if (pulled >= s.size()) throw InvalidInput("pulled arm out of range");
  for (const Observation& o : observations) {
    if (o.arm >= s.size()) throw InvalidInput("observed arm out of range");
    record_observation(s, o.arm, o.reward);
  }
  ++s.pulls[pulled];
}

// Uniform front over the five rules.
class Policy {
 public:
  Policy(PolicyKind kind, std::size_t arms, Round horizon, double delta = 0.0)
      : kind_(kind), state_(arms, horizon, delta) {}

  PolicyKind kind() const noexcept { return kind_; }
  const PolicyState& state() const noexcept { return state_; }
  PolicyState& mutable_state() noexcept { return state_; }

  // Ballooning only: registers arm a_t and maintains the independent set.
  template <NeighborhoodGraph G>
  void on_arrival(ArmIndex arm, const G& g) {
    if (!is_ballooning(kind_)) {
      throw InvalidInput("arrivals are only defined for ballooning policies");
    }
    if (state_.add_arm() != arm) {
      throw InvalidInput("arrivals must be registered in index order");
    }
    bl_update_independent_set(state_, arm, g);
  }

  template <NeighborhoodGraph G>
  ArmIndex select(const G& g, Round t) {
    switch (kind_) {
      case PolicyKind::ucb_n:
        return ucbn_select(state_, g, t);
      case PolicyKind::d_ucb:
        return ducb_select(state_, g, t);
      case PolicyKind::c_ucb:
        return cucb_select(state_, g, t);
      case PolicyKind::d_ucb_bl:
        return ducb_bl_select(state_, g, t);
      case PolicyKind::c_ucb_bl:
        return cucb_bl_select(state_, g, t);
    }
    return kNoArm;
  }

  void update(std::span<const Observation> observations, ArmIndex pulled) {
    simbandit::update(state_, observations, pulled);
  }

  // Unchecked single-observation path for the simulation loops: call
  // record() for every arm in N_pulled, then record_pull().
  void record(ArmIndex arm, double reward) {
    record_observation(state_, arm, reward);
  }
  void record_pull(ArmIndex pulled) { ++state_.pulls[pulled]; }

 private:
  PolicyKind kind_;
  PolicyState state_;
};

}  // namespace simbandit

#endif  // SIMBANDIT_POLICY_HPP_
