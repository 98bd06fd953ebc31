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

// Feedback graphs over arms. Every vertex carries a self-loop: a closed
// neighborhood N_i always contains i.

#ifndef SIMBANDIT_GRAPH_HPP_
#define SIMBANDIT_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "simbandit/core.hpp"

namespace simbandit {

template <class G>
concept NeighborhoodGraph = requires(const G& g, ArmIndex i, ArmIndex j) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.adjacent(i, j) } -> std::convertible_to<bool>;
  g.for_each_neighbor(i, [](ArmIndex) {});
};

// Undirected, reflexive graph stored as sorted closed-neighborhood lists.
class FeedbackGraph {
 public:
  FeedbackGraph() = default;

  // n isolated vertices (self-loops only).
  explicit FeedbackGraph(std::size_t n) : adj_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      adj_[i].push_back(static_cast<ArmIndex>(i));
    }
  }

  std::size_t size() const noexcept { return adj_.size(); }

  std::span<const ArmIndex> neighborhood(ArmIndex i) const {
    check(i);
    return adj_[i];
  }

  template <class F>
  void for_each_neighbor(ArmIndex i, F&& f) const {
    for (ArmIndex j : neighborhood(i)) f(j);
  }

  bool adjacent(ArmIndex i, ArmIndex j) const {
    check(i);
    check(j);
    return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
  }

  // Open degree (self-loop excluded).
  std::size_t degree(ArmIndex i) const { return neighborhood(i).size() - 1; }

  std::size_t edge_count() const noexcept {
    std::size_t total = 0;
    for (const auto& row : adj_) total += row.size() - 1;
    return total / 2;
  }

  void add_edge(ArmIndex i, ArmIndex j) {
    check(i);
    check(j);
    if (i == j) return;
    insert_sorted(adj_[i], j);
    insert_sorted(adj_[j], i);
  }

  // Appends a vertex linked to `neighbors` (all existing vertices).
  ArmIndex add_vertex(std::span<const ArmIndex> neighbors) {
    const auto v = static_cast<ArmIndex>(adj_.size());
    std::vector<ArmIndex> row(neighbors.begin(), neighbors.end());
    for (ArmIndex u : row) {
      check(u);
      adj_[u].push_back(v);  // v is the largest index: order preserved.
    }
    row.push_back(v);
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    adj_.push_back(std::move(row));
    return v;
  }

  // Unordered pairs i < j, lexicographically sorted.
  std::vector<std::pair<ArmIndex, ArmIndex>> edges() const {
    std::vector<std::pair<ArmIndex, ArmIndex>> out;
    for (ArmIndex i = 0; i < adj_.size(); ++i) {
      for (ArmIndex j : adj_[i]) {
        if (j > i) out.emplace_back(i, j);
      }
    }
    return out;
  }

  // Built from adjacency lists; used to finalize bulk construction.
  static FeedbackGraph from_rows(std::vector<std::vector<ArmIndex>> rows) {
    FeedbackGraph g;
    g.adj_ = std::move(rows);
    for (std::size_t i = 0; i < g.adj_.size(); ++i) {
      auto& row = g.adj_[i];
      row.push_back(static_cast<ArmIndex>(i));
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return g;
  }

  static FeedbackGraph from_edges(
      std::size_t n, std::span<const std::pair<ArmIndex, ArmIndex>> edges) {
    std::vector<std::vector<ArmIndex>> rows(n);
    for (auto [i, j] : edges) {
      if (i >= n || j >= n) throw InvalidInput("edge endpoint out of range");
      if (i == j) continue;
      rows[i].push_back(j);
      rows[j].push_back(i);
    }
    return from_rows(std::move(rows));
  }

  friend bool operator==(const FeedbackGraph&, const FeedbackGraph&) = default;

 private:
  void check(ArmIndex i) const {
    if (i >= adj_.size()) {
      throw InvalidInput("arm index " + std::to_string(i) +
                         " out of range for graph of size " +
                         std::to_string(adj_.size()));
    }
  }

  static void insert_sorted(std::vector<ArmIndex>& row, ArmIndex v) {
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v) row.insert(it, v);
  }

  std::vector<std::vector<ArmIndex>> adj_;
};

inline std::span<const ArmIndex> neighborhood(const FeedbackGraph& g,
                                              ArmIndex i) {
  return g.neighborhood(i);
}

inline void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("epsilon must be finite and > 0");
  }
}

// Edge i-j (i != j) iff |means[i] - means[j]| < epsilon, strictly.
inline FeedbackGraph build_similarity_graph(std::span<const double> means,
                                            double epsilon) {
  check_epsilon(epsilon);
  for (double m : means) {
    if (!std::isfinite(m)) throw InvalidInput("arm means must be finite");
  }
  std::vector<ArmIndex> order(means.size());
  std::iota(order.begin(), order.end(), ArmIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](ArmIndex a, ArmIndex b) {
    return means[a] < means[b];
  });
  std::vector<std::vector<ArmIndex>> rows(means.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      if (!(means[order[q]] - means[order[p]] < epsilon)) break;
      rows[order[p]].push_back(order[q]);
      rows[order[q]].push_back(order[p]);
    }
  }
  return FeedbackGraph::from_rows(std::move(rows));
}

// Erdos-Renyi G(n, p) with self-loops.
inline FeedbackGraph random_gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput("edge probability must lie in [0, 1]");
  }
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<ArmIndex>> rows(n);
  for (ArmIndex i = 0; i < n; ++i) {
    for (ArmIndex j = i + 1; j < n; ++j) {
      if (coin(rng)) {
        rows[i].push_back(j);
        rows[j].push_back(i);
      }
    }
  }
  return FeedbackGraph::from_rows(std::move(rows));
}

inline constexpr std::size_t kDefaultEdgeProbabilitySamples = 1'000'000;

// P(|X - Y| <= epsilon) for X, Y i.i.d. from `dist`. Closed form for
// uniform01; Monte Carlo otherwise.
inline double edge_probability(
    MeanDistribution dist, double epsilon, Rng& rng,
    std::size_t samples = kDefaultEdgeProbabilitySamples) {
  check_epsilon(epsilon);
  if (dist == MeanDistribution::uniform01) {
    if (epsilon >= 1.0) return 1.0;
    return 1.0 - (1.0 - epsilon) * (1.0 - epsilon);
  }
  if (samples == 0) throw InvalidInput("sample count must be positive");
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = sample_mean(dist, rng);
    const double y = sample_mean(dist, rng);
    if (std::abs(x - y) <= epsilon) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

// Threshold 5 max{log_b T, 1}, b = 1/(1-p), above which the independence
// number of a G(T, p) graph lies with probability at most T^-5.
inline double independence_tail_bound(Round horizon, double p) {
  if (horizon < 2) throw InvalidInput("horizon must be >= 2");
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInput("edge probability must lie strictly inside (0, 1)");
  }
  const double log_b_t =
      std::log(static_cast<double>(horizon)) / -std::log1p(-p);
  return 5.0 * std::max(log_b_t, 1.0);
}

// One "i j" line per edge, i < j, lexicographic.
inline void write_edge_list(std::ostream& os, const FeedbackGraph& g) {
  for (auto [i, j] : g.edges()) os << i << ' ' << j << '\n';
}

// Similarity graph over a growing arm set, answered from mean buckets of
// width epsilon/16 instead of stored adjacency. A neighborhood query walks
// the buckets covering [m - eps, m + eps] and compares means only in the two
// outermost buckets on each side.
class SimilarityIndex {
 public:
  static constexpr int kSubdivisions = 16;

  explicit SimilarityIndex(double epsilon)
      : epsilon_(epsilon), width_(epsilon / kSubdivisions) {
    check_epsilon(epsilon);
  }

  double epsilon() const noexcept { return epsilon_; }
  std::size_t size() const noexcept { return means_.size(); }
  std::span<const double> means() const noexcept { return means_; }
  double mean(ArmIndex i) const { return means_.at(i); }

  ArmIndex add(double mean) {
    if (!std::isfinite(mean)) throw InvalidInput("arm means must be finite");
    const auto arm = static_cast<ArmIndex>(means_.size());
    means_.push_back(mean);
    buckets_[bucket(mean)].push_back({mean, arm});
    return arm;
  }

  bool adjacent(ArmIndex i, ArmIndex j) const {
    return i == j || std::abs(means_.at(i) - means_.at(j)) < epsilon_;
  }

  // Visits N_i (including i) in unspecified order.
  template <class F>
  void for_each_neighbor(ArmIndex i, F&& f) const {
    const double m = means_.at(i);
    // Rounding is monotone, so every mean within epsilon of m falls into a
    // bucket in [lo, hi].
    const std::int64_t lo = bucket(m - epsilon_);
    const std::int64_t hi = bucket(m + epsilon_);
    for (std::int64_t k = lo; k <= hi; ++k) {
      auto it = buckets_.find(k);
      if (it == buckets_.end()) continue;
      if (k >= lo + 2 && k <= hi - 2) {
        for (const Entry& e : it->second) f(e.arm);
        continue;
      }
      for (const Entry& e : it->second) {
        if (std::abs(e.mean - m) < epsilon_) f(e.arm);
      }
    }
  }

  std::vector<ArmIndex> neighborhood(ArmIndex i) const {
    std::vector<ArmIndex> out;
    for_each_neighbor(i, [&](ArmIndex j) { out.push_back(j); });
    std::sort(out.begin(), out.end());
    return out;
  }

  FeedbackGraph materialize() const {
    std::vector<std::vector<ArmIndex>> rows(size());
    for (ArmIndex i = 0; i < size(); ++i) rows[i] = neighborhood(i);
    return FeedbackGraph::from_rows(std::move(rows));
  }

 private:
  struct Entry {
    double mean;
    ArmIndex arm;
  };

  std::int64_t bucket(double v) const {
    return static_cast<std::int64_t>(std::floor(v / width_));
  }

  double epsilon_;
  double width_;
  std::vector<double> means_;
  std::unordered_map<std::int64_t, std::vector<Entry>> buckets_;
};

}  // namespace simbandit

#endif  // SIMBANDIT_GRAPH_HPP_
