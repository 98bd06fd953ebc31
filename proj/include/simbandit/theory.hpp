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

// Regret-bound calculators and Monte Carlo estimates of the ballooning
// quantities M, B and L. Every "log" is the natural logarithm.

#ifndef SIMBANDIT_THEORY_HPP_
#define SIMBANDIT_THEORY_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <span>
#include <thread>
#include <vector>

#include "simbandit/core.hpp"

namespace simbandit {

struct GapProfile {
  double delta_min = 0.0;       // best minus second best
  double delta_max = 0.0;       // best minus worst
  double delta_2eps_min = 0.0;  // min pairwise gap among arms within 2 eps of best
  double delta_min_T = 0.0;     // min pairwise gap over all arms
  double delta_max_T = 0.0;     // max pairwise gap over all arms
};

inline GapProfile gap_profile(std::span<const double> means, double epsilon) {
  if (means.size() < 2) throw InvalidInput("gaps need at least two arms");
  std::vector<double> sorted(means.begin(), means.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  GapProfile g;
  const double best = sorted.front();
  g.delta_min = best - sorted[1];
  g.delta_max = best - sorted.back();
  g.delta_max_T = g.delta_max;
  g.delta_min_T = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    g.delta_min_T = std::min(g.delta_min_T, sorted[i] - sorted[i + 1]);
  }
  g.delta_2eps_min = g.delta_min;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (!(best - sorted[i + 1] < 2.0 * epsilon)) break;
    g.delta_2eps_min = std::min(g.delta_2eps_min, sorted[i] - sorted[i + 1]);
  }
  return g;
}

namespace detail {

inline double log_sqrt2_t(Round horizon) {
  return std::log(std::numbers::sqrt2 * static_cast<double>(horizon));
}

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace detail

// C1 = 2 log((Dmax + eps) / (Dmax - (gamma - 2) eps)).
inline double lower_bound_c1(double delta_max, double epsilon,
                             std::size_t gamma) {
  detail::require_positive(epsilon, "epsilon");
  if (gamma < 1) throw InvalidInput("gamma must be >= 1");
  const double denom =
      delta_max - (static_cast<double>(gamma) - 2.0) * epsilon;
  if (!(denom > 0.0)) {
    throw InfeasibleInstance("Dmax - (gamma - 2) eps must be positive");
  }
  return 2.0 * std::log((delta_max + epsilon) / denom);
}

// Coefficient of log T in the asymptotic lower bound: 2/Dmin + C1/eps.
inline double lower_bound_coefficient(double delta_min, double delta_max,
                                      double epsilon, std::size_t gamma) {
  detail::require_positive(delta_min, "delta_min");
  return 2.0 / delta_min + lower_bound_c1(delta_max, epsilon, gamma) / epsilon;
}

inline double constant_c2(std::size_t gamma) {
  if (gamma < 1) throw InvalidInput("gamma must be >= 1");
  return 8.0 * (std::log(2.0 * static_cast<double>(gamma)) +
                std::numbers::pi * std::numbers::pi / 3.0);
}

inline double constant_c3(std::size_t gamma) {
  if (gamma < 1) throw InvalidInput("gamma must be >= 1");
  return 8.0 * (std::log(2.0 * static_cast<double>(gamma)) +
                std::numbers::pi * std::numbers::pi / 6.0);
}

// D-UCB, general form: 32 log(sqrt2 T)^2 S + C2 log(sqrt2 T)/eps + Dmax
// + 4 eps + 1, where S is the maximal sum of inverse gaps over the
// independent dominating sets around the optimum.
inline double ducb_upper_bound_from_sum(Round horizon, double epsilon,
                                        std::size_t gamma, double sum_inv_gaps,
                                        double delta_max) {
  detail::require_positive(epsilon, "epsilon");
  const double l = detail::log_sqrt2_t(horizon);
  return 32.0 * l * l * sum_inv_gaps + constant_c2(gamma) * l / epsilon +
         delta_max + 4.0 * epsilon + 1.0;
}

// D-UCB with the sum bounded by 2/Dmin:
// 64 log(sqrt2 T)^2/Dmin + C2 log(sqrt2 T)/eps + Dmax + 4 eps + 1.
inline double ducb_upper_bound(Round horizon, double epsilon,
                               std::size_t gamma, double delta_min,
                               double delta_max) {
  detail::require_positive(delta_min, "delta_min");
  return ducb_upper_bound_from_sum(horizon, epsilon, gamma, 2.0 / delta_min,
                                   delta_max);
}

// Gap-free D-UCB bound: 16 sqrt(T) log(sqrt2 T) + C2 log(sqrt2 T)/eps + Dmax
// + 4 eps + 1.
inline double ducb_gap_free_bound(Round horizon, double epsilon,
                                  std::size_t gamma, double delta_max) {
  detail::require_positive(epsilon, "epsilon");
  const double l = detail::log_sqrt2_t(horizon);
  return 16.0 * std::sqrt(static_cast<double>(horizon)) * l +
         constant_c2(gamma) * l / epsilon + delta_max + 4.0 * epsilon + 1.0;
}

// C-UCB: 32 eps log(sqrt2 T)/D2eps^2 + C2 log(sqrt2 T)/eps + Dmax + 2 eps.
inline double cucb_upper_bound(Round horizon, double epsilon,
                               std::size_t gamma, double delta_2eps_min,
                               double delta_max) {
  detail::require_positive(epsilon, "epsilon");
  detail::require_positive(delta_2eps_min, "delta_2eps_min");
  const double l = detail::log_sqrt2_t(horizon);
  return 32.0 * epsilon * l / (delta_2eps_min * delta_2eps_min) +
         constant_c2(gamma) * l / epsilon + delta_max + 2.0 * epsilon;
}

// UCB-N: 32 log(sqrt2 T)^2/Dmin + C3 log(sqrt2 T)/eps + Dmax + 2 eps + 1.
inline double ucbn_upper_bound(Round horizon, double epsilon,
                               std::size_t gamma, double delta_min,
                               double delta_max) {
  detail::require_positive(epsilon, "epsilon");
  detail::require_positive(delta_min, "delta_min");
  const double l = detail::log_sqrt2_t(horizon);
  return 32.0 * l * l / delta_min + constant_c3(gamma) * l / epsilon +
         delta_max + 2.0 * epsilon + 1.0;
}

struct BallooningBoundInputs {
  Round horizon = 0;
  double epsilon = 0.0;
  double b = 0.0;  // 1/(1-p), p the edge probability of the arrival law
  double M = 0.0;
  double delta_min_T = 0.0;
  double delta_max_T = 0.0;
  double B = 0.0;
  // Constant under the square root of the D-UCB-BL upper bound; 3 gives the
  // tighter variant.
  double concentration_constant = 6.0;
};

struct BallooningBounds {
  double ducb_bl_upper = 0.0;  // upper bound, D-UCB-BL
  double ducb_bl_lower = 0.0;  // lower bound, D-UCB-BL
  double cucb_bl_upper = 0.0;  // upper bound, C-UCB-BL
};

inline BallooningBounds ballooning_bounds(const BallooningBoundInputs& in) {
  detail::require_positive(in.epsilon, "epsilon");
  if (!(in.b > 1.0)) throw InvalidInput("b must be > 1");
  if (in.horizon < 1) throw InvalidInput("horizon must be >= 1");
  const double t = static_cast<double>(in.horizon);
  const double eps = in.epsilon;
  const double l = detail::log_sqrt2_t(in.horizon);
  const double log_b_t = std::max(std::log(t) / std::log(in.b), 1.0);
  const double structure =
      40.0 * log_b_t * in.delta_max_T * l / (eps * eps) + 2.0 * in.delta_max_T;
  BallooningBounds out;
  out.ducb_bl_upper =
      structure + 4.0 * std::sqrt(in.concentration_constant * t * in.M * l) +
      2.0 * eps + 2.0 * t * eps * std::exp(-in.M);
  out.ducb_bl_lower = in.B * eps / 4.0 * (1.0 - std::exp(-in.B / 8.0)) -
                      20.0 * log_b_t * l / eps - eps;
  const double log_et = std::log(std::numbers::e * t);
  out.cucb_bl_upper = structure +
                      96.0 * eps * log_et * log_et /
                          (in.delta_min_T * in.delta_min_T) +
                      4.0 * eps;
  return out;
}

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct BallooningQuantities {
  Estimate M;  // arrivals within 2 eps of the running optimum
  Estimate B;  // arrivals whose gap lies in (eps/2, eps)
  Estimate L;  // changes of the optimal arm
  std::vector<double> m_replicates;
  std::vector<double> b_replicates;
  std::vector<double> l_replicates;
};

namespace detail {

inline Estimate summarize(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

}  // namespace detail

// Simulates `replicates` arrival streams of length T. Replicate r uses seed
// derive_seed(seed, r), so results do not depend on `threads`.
inline BallooningQuantities estimate_M_B_L(MeanDistribution dist, Round horizon,
                                           double epsilon,
                                           std::size_t replicates,
                                           std::uint64_t seed,
                                           unsigned threads = 1) {
  if (replicates < 1) throw InvalidInput("replicates must be >= 1");
  detail::require_positive(epsilon, "epsilon");
  BallooningQuantities q;
  q.m_replicates.assign(replicates, 0.0);
  q.b_replicates.assign(replicates, 0.0);
  q.l_replicates.assign(replicates, 0.0);
  auto run = [&](std::size_t r) {
    Rng rng(derive_seed(seed, r));
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t m = 0, b = 0, l = 0;
    for (Round t = 1; t <= horizon; ++t) {
      const double mu = sample_mean(dist, rng);
      if (t == 1 || mu > best) {
        best = mu;
        ++l;
      }
      const double gap = best - mu;
      if (gap < 2.0 * epsilon) ++m;
      if (gap > epsilon / 2.0 && gap < epsilon) ++b;
    }
    q.m_replicates[r] = static_cast<double>(m);
    q.b_replicates[r] = static_cast<double>(b);
    q.l_replicates[r] = static_cast<double>(l);
  };
  threads = std::max(1U, std::min<unsigned>(
                             threads, static_cast<unsigned>(replicates)));
  if (threads == 1) {
    for (std::size_t r = 0; r < replicates; ++r) run(r);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < replicates; r += threads) run(r);
      });
    }
  }
  q.M = detail::summarize(q.m_replicates);
  q.B = detail::summarize(q.b_replicates);
  q.L = detail::summarize(q.l_replicates);
  return q;
}

// Harmonic number H_T, the exact expectation of L.
inline double harmonic_number(Round horizon) {
  double h = 0.0;
  for (Round t = horizon; t >= 1; --t) h += 1.0 / static_cast<double>(t);
  return h;
}

}  // namespace simbandit

#endif  // SIMBANDIT_THEORY_HPP_
