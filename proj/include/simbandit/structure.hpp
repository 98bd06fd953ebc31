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

// Structural numbers of feedback graphs: claw detection, exhaustive
// independence / domination numbers for small graphs, and an exact linear
// scan for the domination number of similarity graphs.

#ifndef SIMBANDIT_STRUCTURE_HPP_
#define SIMBANDIT_STRUCTURE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "simbandit/core.hpp"
#include "simbandit/graph.hpp"

namespace simbandit {

struct GraphStats {
  std::size_t alpha = 0;  // independence number
  std::size_t gamma = 0;  // domination number
  std::size_t idom = 0;   // independent domination number
  bool claw_free = true;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

// True iff no induced K_{1,3}. For each center the open neighborhood is
// searched for three pairwise non-adjacent vertices using local bitsets.
inline bool is_claw_free(const FeedbackGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::int32_t> local(n, -1);
  std::vector<ArmIndex> members;
  std::vector<std::uint64_t> nonadj;  // row-major, one row per member
  for (ArmIndex c = 0; c < n; ++c) {
    members.clear();
    for (ArmIndex v : g.neighborhood(c)) {
      if (v != c) members.push_back(v);
    }
    const std::size_t d = members.size();
    if (d < 3) continue;
    const std::size_t words = (d + 63) / 64;
    for (std::size_t a = 0; a < d; ++a) {
      local[members[a]] = static_cast<std::int32_t>(a);
    }
    // Start from "everything non-adjacent" and clear the true neighbors.
    nonadj.assign(d * words, ~std::uint64_t{0});
    for (std::size_t a = 0; a < d; ++a) {
      std::uint64_t* row = &nonadj[a * words];
      if (d % 64 != 0) row[words - 1] = (std::uint64_t{1} << (d % 64)) - 1;
      for (ArmIndex x : g.neighborhood(members[a])) {
        const std::int32_t lx = local[x];
        if (lx >= 0) row[lx / 64] &= ~(std::uint64_t{1} << (lx % 64));
      }
    }
    bool claw = false;
    for (std::size_t a = 0; a < d && !claw; ++a) {
      const std::uint64_t* ra = &nonadj[a * words];
      for (std::size_t b = a + 1; b < d && !claw; ++b) {
        if (!((ra[b / 64] >> (b % 64)) & 1U)) continue;
        const std::uint64_t* rb = &nonadj[b * words];
        for (std::size_t w = 0; w < words; ++w) {
          if (ra[w] & rb[w]) {
            claw = true;
            break;
          }
        }
      }
    }
    for (ArmIndex v : members) local[v] = -1;
    if (claw) return false;
  }
  return true;
}

inline constexpr std::size_t kExactOracleMaxVertices = 20;

// Exhaustive alpha, gamma and i(G) over all 2^n vertex subsets.
inline GraphStats exact_numbers(const FeedbackGraph& g) {
  const std::size_t n = g.size();
  if (n > kExactOracleMaxVertices) {
    throw SizeLimitError("exact_numbers supports at most 20 vertices");
  }
  GraphStats stats;
  stats.claw_free = is_claw_free(g);
  if (n == 0) return stats;

  std::vector<std::uint32_t> closed(n);
  for (ArmIndex v = 0; v < n; ++v) {
    for (ArmIndex u : g.neighborhood(v)) closed[v] |= std::uint32_t{1} << u;
  }
  const std::uint32_t full = (n == 32) ? ~0U : ((std::uint32_t{1} << n) - 1);
  const std::size_t subsets = std::size_t{1} << n;
  // Built from the subset without its lowest vertex.
  std::vector<std::uint32_t> covered(subsets, 0);
  std::vector<std::uint8_t> independent(subsets, 0);
  independent[0] = 1;
  stats.gamma = stats.idom = n;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const auto m = static_cast<std::uint32_t>(mask);
    const int low = std::countr_zero(m);
    const std::uint32_t rest = m & (m - 1);
    covered[mask] = covered[rest] | closed[low];
    const std::uint32_t open = closed[low] & ~(std::uint32_t{1} << low);
    independent[mask] = independent[rest] && (open & rest) == 0;
    const auto size = static_cast<std::size_t>(std::popcount(m));
    const bool dominating = covered[mask] == full;
    if (independent[mask]) stats.alpha = std::max(stats.alpha, size);
    if (dominating) {
      stats.gamma = std::min(stats.gamma, size);
      if (independent[mask]) stats.idom = std::min(stats.idom, size);
    }
  }
  return stats;
}

// Domination number of the similarity graph over `means`. Greedy over the
// sorted means: the leftmost undominated arm is covered by the rightmost arm
// still adjacent to it. Exact for this graph family at any size.
inline std::size_t similarity_domination_number(std::span<const double> means,
                                                double epsilon) {
  check_epsilon(epsilon);
  std::vector<double> sorted(means.begin(), means.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t count = 0;
  std::size_t u = 0;
  while (u < sorted.size()) {
    std::size_t v = u;
    while (v + 1 < sorted.size() && sorted[v + 1] - sorted[u] < epsilon) ++v;
    ++count;
    std::size_t w = v + 1;
    while (w < sorted.size() && sorted[w] - sorted[v] < epsilon) ++w;
    u = w;
  }
  return count;
}

}  // namespace simbandit

#endif  // SIMBANDIT_STRUCTURE_HPP_
