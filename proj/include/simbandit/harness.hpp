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

// Experiment runner: instance x policy grids, aggregation of regret traces,
// CSV output and a key:value run manifest.

#ifndef SIMBANDIT_HARNESS_HPP_
#define SIMBANDIT_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "simbandit/config.hpp"
#include "simbandit/core.hpp"
#include "simbandit/environment.hpp"
#include "simbandit/graph.hpp"
#include "simbandit/policy.hpp"
#include "simbandit/simulation.hpp"
#include "simbandit/structure.hpp"
#include "simbandit/theory.hpp"

namespace simbandit {

inline constexpr std::string_view kCsvHeader =
    "round,policy,mean_regret,ci_low,ci_high,n_trials";

inline constexpr double kCiZ = 1.96;

// Thinned statistics for one policy. ci_half = 1.96 s / sqrt(n) with s the
// sample standard deviation across trials; 0 when n == 1.
struct PolicyAggregate {
  PolicyKind policy = PolicyKind::ucb_n;
  std::vector<Round> rounds;
  std::vector<double> mean;
  std::vector<double> ci_half;
  std::size_t trials = 0;
  std::vector<double> final_regret;  // per trial, at the last round

  double final_mean() const { return mean.empty() ? 0.0 : mean.back(); }
  double final_ci_half() const { return ci_half.empty() ? 0.0 : ci_half.back(); }
};

struct AggregateResult {
  std::vector<PolicyAggregate> policies;

  const PolicyAggregate& at(PolicyKind k) const {
    for (const auto& p : policies) {
      if (p.policy == k) return p;
    }
    throw InvalidInput("policy not present in result");
  }
};

inline std::vector<Round> recorded_rounds(Round horizon, Round record_every) {
  std::vector<Round> rounds;
  for (Round r = record_every; r <= horizon; r += record_every) {
    rounds.push_back(r);
  }
  return rounds;
}

// Keeps only the recorded rounds (1-based) of a full trace.
inline RegretTrace thin(const RegretTrace& full, Round record_every) {
  RegretTrace out;
  for (Round r : recorded_rounds(full.cumulative.size(), record_every)) {
    out.cumulative.push_back(full.cumulative[r - 1]);
  }
  return out;
}

// Pointwise mean and CI half-width. `traces` must already be sampled at
// `rounds` (or be full traces with rounds 1..T).
inline PolicyAggregate aggregate_sampled(std::span<const RegretTrace> traces,
                                         std::vector<Round> rounds) {
  if (traces.empty()) throw InvalidInput("cannot aggregate zero traces");
  const std::size_t len = traces.front().cumulative.size();
  for (const auto& t : traces) {
    if (t.cumulative.size() != len) {
      throw InvalidInput("traces must have equal lengths");
    }
  }
  if (rounds.size() != len) throw InvalidInput("round labels do not match");
  PolicyAggregate agg;
  agg.rounds = std::move(rounds);
  agg.trials = traces.size();
  const double n = static_cast<double>(traces.size());
  agg.mean.resize(len);
  agg.ci_half.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    double sum = 0.0;
    for (const auto& t : traces) sum += t.cumulative[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& t : traces) {
      ss += (t.cumulative[k] - mean) * (t.cumulative[k] - mean);
    }
    agg.mean[k] = mean;
    agg.ci_half[k] =
        traces.size() < 2 ? 0.0 : kCiZ * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  for (const auto& t : traces) {
    agg.final_regret.push_back(len ? t.cumulative.back() : 0.0);
  }
  return agg;
}

// Full-length traces, recorded every `record_every` rounds.
inline PolicyAggregate aggregate(std::span<const RegretTrace> traces,
                                 Round record_every) {
  if (traces.empty()) throw InvalidInput("cannot aggregate zero traces");
  if (record_every < 1) throw InvalidInput("record_every must be >= 1");
  std::vector<RegretTrace> thinned;
  thinned.reserve(traces.size());
  for (const auto& t : traces) thinned.push_back(thin(t, record_every));
  return aggregate_sampled(
      thinned, recorded_rounds(traces.front().cumulative.size(), record_every));
}

inline void write_csv(std::ostream& os, const AggregateResult& result) {
  os << kCsvHeader << '\n';
  for (const auto& p : result.policies) {
    for (std::size_t k = 0; k < p.rounds.size(); ++k) {
      os << p.rounds[k] << ',' << to_string(p.policy) << ','
         << format_double(p.mean[k]) << ','
         << format_double(p.mean[k] - p.ci_half[k]) << ','
         << format_double(p.mean[k] + p.ci_half[k]) << ',' << p.trials << '\n';
    }
  }
}

// Theory values for one instance, exported next to the CSV.
struct Envelope {
  std::size_t instance = 0;
  std::vector<std::pair<std::string, double>> values;

  std::optional<double> get(std::string_view name) const {
    for (const auto& [k, v] : values) {
      if (k == name) return v;
    }
    return std::nullopt;
  }
};

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::optional<std::uint64_t> seed_override;
  bool write_files = true;
  // Monte Carlo sizes for the matched-alpha edge probability and for the
  // ballooning envelope's M/B estimates.
  std::size_t edge_probability_samples = kDefaultEdgeProbabilitySamples;
  std::size_t envelope_replicates = 100;
};

struct RunReport {
  ExperimentConfig config;
  AggregateResult result;
  std::vector<std::uint64_t> instance_seeds;
  std::vector<Envelope> envelopes;
  std::optional<double> edge_probability;  // matched-alpha baseline only
  double wall_seconds = 0.0;
  unsigned threads = 1;
};

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(0..n-1) on `threads` workers. Work is claimed dynamically, but
// every result is stored by index, so output never depends on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

inline std::uint64_t instance_seed(std::uint64_t master, std::size_t i) {
  return derive_seed(master, i, "instance");
}

inline std::uint64_t reward_seed(const ExperimentConfig& c, std::uint64_t master,
                                 std::size_t i, PolicyKind p) {
  return c.couple_rewards ? derive_seed(master, i, "rewards")
                          : derive_seed(master, i, to_string(p));
}

inline Envelope stationary_envelope(std::size_t index, const Instance& inst,
                                    Round horizon) {
  Envelope env;
  env.instance = index;
  if (inst.arm_count() < 2) return env;
  const GapProfile gaps = gap_profile(inst.means(), inst.epsilon());
  if (!(gaps.delta_min > 0.0) || !(gaps.delta_2eps_min > 0.0)) return env;
  const std::size_t gamma =
      similarity_domination_number(inst.means(), inst.epsilon());
  const double eps = inst.epsilon();
  env.values = {
      {"gamma", static_cast<double>(gamma)},
      {"delta_min", gaps.delta_min},
      {"delta_max", gaps.delta_max},
      {"delta_2eps_min", gaps.delta_2eps_min},
      {"ducb_upper", ducb_upper_bound(horizon, eps, gamma, gaps.delta_min,
                                      gaps.delta_max)},
      {"ducb_gap_free", ducb_gap_free_bound(horizon, eps, gamma, gaps.delta_max)},
      {"cucb_upper", cucb_upper_bound(horizon, eps, gamma, gaps.delta_2eps_min,
                                      gaps.delta_max)},
      {"ucbn_upper", ucbn_upper_bound(horizon, eps, gamma, gaps.delta_min,
                                      gaps.delta_max)},
  };
  try {
    env.values.emplace_back(
        "lower_bound_coefficient",
        lower_bound_coefficient(gaps.delta_min, gaps.delta_max, eps, gamma));
  } catch (const InfeasibleInstance&) {
  }
  return env;
}

inline std::vector<double> arrival_means(const ExperimentConfig& c,
                                         std::uint64_t arrival_seed) {
  Rng rng(arrival_seed);
  std::vector<double> means(c.T);
  for (double& m : means) m = sample_mean(c.dist, rng);
  return means;
}

inline std::vector<Envelope> ballooning_envelopes(const ExperimentConfig& c,
                                                  std::uint64_t master,
                                                  const RunOptions& opt,
                                                  unsigned threads) {
  std::vector<Envelope> out;
  if (c.T < 2) return out;
  Rng prng(derive_seed(master, 0, "edge_probability"));
  const double p =
      edge_probability(c.dist, c.epsilon, prng, opt.edge_probability_samples);
  if (!(p > 0.0 && p < 1.0)) return out;
  const BallooningQuantities q =
      estimate_M_B_L(c.dist, c.T, c.epsilon, opt.envelope_replicates,
                     derive_seed(master, 0, "envelope"), threads);
  for (std::size_t i = 0; i < c.instances; ++i) {
    const auto means = arrival_means(c, derive_seed(master, i, "arrivals"));
    const GapProfile gaps = gap_profile(means, c.epsilon);
    Envelope env;
    env.instance = i;
    env.values = {{"edge_probability", p},
                  {"b", 1.0 / (1.0 - p)},
                  {"M", q.M.mean},
                  {"B", q.B.mean},
                  {"L", q.L.mean},
                  {"delta_min_T", gaps.delta_min_T},
                  {"delta_max_T", gaps.delta_max_T}};
    if (gaps.delta_min_T > 0.0) {
      BallooningBoundInputs in;
      in.horizon = c.T;
      in.epsilon = c.epsilon;
      in.b = 1.0 / (1.0 - p);
      in.M = q.M.mean;
      in.B = q.B.mean;
      in.delta_min_T = gaps.delta_min_T;
      in.delta_max_T = gaps.delta_max_T;
      const BallooningBounds b = ballooning_bounds(in);
      env.values.emplace_back("ducb_bl_upper", b.ducb_bl_upper);
      env.values.emplace_back("ducb_bl_lower", b.ducb_bl_lower);
      env.values.emplace_back("cucb_bl_upper", b.cucb_bl_upper);
    }
    out.push_back(std::move(env));
  }
  return out;
}

inline std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace detail

inline std::vector<Envelope> compute_envelopes(const ExperimentConfig& c,
                                               const RunOptions& opt = {}) {
  const std::uint64_t master = opt.seed_override.value_or(c.master_seed);
  const unsigned threads = detail::resolve_threads(opt.threads);
  if (c.setting == Setting::ballooning) {
    return detail::ballooning_envelopes(c, master, opt, threads);
  }
  std::vector<Envelope> out(c.instances);
  detail::parallel_for(c.instances, threads, [&](std::size_t i) {
    const Instance inst =
        sample_instance(c.K, c.dist, c.epsilon, c.reward_model,
                        detail::instance_seed(master, i));
    out[i] = detail::stationary_envelope(i, inst, c.T);
  });
  return out;
}

inline void write_envelopes(std::ostream& os,
                            std::span<const Envelope> envelopes) {
  os << "instance,bound,value\n";
  for (const auto& e : envelopes) {
    for (const auto& [name, v] : e.values) {
      os << e.instance << ',' << name << ',' << format_double(v) << '\n';
    }
  }
}

inline void write_manifest(std::ostream& os, const RunReport& r,
                           std::uint64_t master, const std::string& started) {
  const ExperimentConfig& c = r.config;
  os << "version: " << kVersion << '\n'
     << "setting: " << to_string(c.setting) << '\n'
     << "T: " << c.T << '\n'
     << "K: " << c.K << '\n'
     << "epsilon: " << format_double(c.epsilon) << '\n'
     << "dist: " << to_string(c.dist) << '\n'
     << "reward_model: " << to_string(c.reward_model) << '\n'
     << "policies: ";
  for (std::size_t i = 0; i < c.policies.size(); ++i) {
    os << (i ? "," : "") << to_string(c.policies[i]);
  }
  os << '\n'
     << "instances: " << c.instances << '\n'
     << "master_seed: " << master << '\n'
     << "output_path: " << c.output_path << '\n'
     << "record_every: " << c.record_every << '\n'
     << "delta: "
     << format_double(c.delta > 0.0 ? c.delta : 1.0 / static_cast<double>(c.T))
     << '\n'
     << "couple_rewards: " << (c.couple_rewards ? "true" : "false") << '\n';
  if (r.edge_probability) {
    os << "edge_probability: " << format_double(*r.edge_probability) << '\n';
  }
  os << "ci_degenerate: " << (c.instances < 2 ? "true" : "false") << '\n';
  for (std::size_t i = 0; i < r.instance_seeds.size(); ++i) {
    os << "instance_seed_" << i << ": " << r.instance_seeds[i] << '\n';
  }
  os << "threads: " << r.threads << '\n'
     << "started_at: " << started << '\n'
     << "wall_seconds: " << format_double(r.wall_seconds) << '\n';
}

// Runs every (instance, policy) pair of the configured grid and aggregates.
// Dispatches on the setting; stationary-standard-graph replaces each
// similarity graph with a G(n, p) graph of matched edge probability.
inline RunReport run(const ExperimentConfig& config, const RunOptions& opt = {}) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::string started = detail::timestamp_utc();
  const std::uint64_t master = opt.seed_override.value_or(config.master_seed);
  const unsigned threads = detail::resolve_threads(opt.threads);
  const ExperimentConfig& c = config;
  const std::size_t n_pol = c.policies.size();

  RunReport report;
  report.config = c;
  report.config.master_seed = master;
  report.threads = threads;
  for (std::size_t i = 0; i < c.instances; ++i) {
    report.instance_seeds.push_back(
        c.setting == Setting::ballooning ? derive_seed(master, i, "arrivals")
                                         : detail::instance_seed(master, i));
  }

  TrialOptions trial;
  trial.delta = c.delta;
  std::vector<RegretTrace> traces(c.instances * n_pol);

  if (c.setting == Setting::ballooning) {
    const ArrivalProcess process{c.dist, c.T};
    detail::parallel_for(traces.size(), threads, [&](std::size_t task) {
      const std::size_t i = task / n_pol;
      const PolicyKind p = c.policies[task % n_pol];
      traces[task] = thin(
          run_ballooning_trial(process, c.epsilon, c.reward_model, p,
                               report.instance_seeds[i],
                               detail::reward_seed(c, master, i, p), trial),
          c.record_every);
    });
    report.envelopes = detail::ballooning_envelopes(c, master, opt, threads);
  } else {
    std::optional<double> p_edge;
    if (c.setting == Setting::stationary_standard_graph) {
      Rng prng(derive_seed(master, 0, "edge_probability"));
      p_edge = edge_probability(c.dist, c.epsilon, prng,
                                opt.edge_probability_samples);
      report.edge_probability = p_edge;
    }
    std::vector<std::optional<Instance>> instances(c.instances);
    std::vector<FeedbackGraph> baseline(c.instances);
    report.envelopes.resize(c.instances);
    detail::parallel_for(c.instances, threads, [&](std::size_t i) {
      instances[i] = sample_instance(c.K, c.dist, c.epsilon, c.reward_model,
                                     report.instance_seeds[i]);
      if (p_edge) {
        Rng grng(derive_seed(master, i, "gnp"));
        baseline[i] = random_gnp(c.K, *p_edge, grng);
      } else {
        report.envelopes[i] = detail::stationary_envelope(i, *instances[i], c.T);
      }
    });
    if (p_edge) report.envelopes.clear();
    detail::parallel_for(traces.size(), threads, [&](std::size_t task) {
      const std::size_t i = task / n_pol;
      const PolicyKind p = c.policies[task % n_pol];
      const Instance& inst = *instances[i];
      const std::uint64_t seed = detail::reward_seed(c, master, i, p);
      RegretTrace full =
          p_edge ? run_stationary_trial(baseline[i], inst.means(),
                                        inst.reward_model(), p, c.T, seed, trial)
                 : run_stationary_trial(inst, p, c.T, seed, trial);
      traces[task] = thin(full, c.record_every);
    });
  }

  const auto rounds = recorded_rounds(c.T, c.record_every);
  for (std::size_t k = 0; k < n_pol; ++k) {
    std::vector<RegretTrace> per_policy;
    for (std::size_t i = 0; i < c.instances; ++i) {
      per_policy.push_back(std::move(traces[i * n_pol + k]));
    }
    PolicyAggregate agg = aggregate_sampled(per_policy, rounds);
    agg.policy = c.policies[k];
    report.result.policies.push_back(std::move(agg));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (opt.write_files && !c.output_path.empty()) {
    std::ofstream csv(c.output_path);
    if (!csv) throw Error("cannot write '" + c.output_path + "'");
    write_csv(csv, report.result);
    std::ofstream env(c.output_path + ".envelope.csv");
    if (!env) throw Error("cannot write envelope file");
    write_envelopes(env, report.envelopes);
    std::ofstream man(c.output_path + ".manifest.txt");
    if (!man) throw Error("cannot write manifest");
    write_manifest(man, report, master, started);
  }
  return report;
}

// ucb-n (or any configured stationary policy) on G(n, p) graphs whose edge
// probability matches the similarity graph's, with otherwise identical
// instances and seeds.
inline RunReport run_matched_alpha_baseline(const ExperimentConfig& config,
                                            const RunOptions& opt = {}) {
  if (config.setting != Setting::stationary_standard_graph) {
    throw ConfigError(
        "matched-alpha baseline needs setting stationary-standard-graph");
  }
  return run(config, opt);
}

}  // namespace simbandit

#endif  // SIMBANDIT_HARNESS_HPP_
