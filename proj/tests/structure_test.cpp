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

#include "simbandit/structure.hpp"

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "simbandit/graph.hpp"

namespace simbandit {
namespace {

FeedbackGraph complete_graph(std::size_t n) {
  FeedbackGraph g(n);
  for (ArmIndex i = 0; i < n; ++i) {
    for (ArmIndex j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

FeedbackGraph star_k13() {
  FeedbackGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  return g;
}

// Four-vertex subset oracle for claws.
bool has_claw_by_subsets(const FeedbackGraph& g) {
  const auto n = static_cast<ArmIndex>(g.size());
  for (ArmIndex c = 0; c < n; ++c) {
    for (ArmIndex a = 0; a < n; ++a) {
      for (ArmIndex b = a + 1; b < n; ++b) {
        for (ArmIndex d = b + 1; d < n; ++d) {
          if (c == a || c == b || c == d) continue;
          if (g.adjacent(c, a) && g.adjacent(c, b) && g.adjacent(c, d) &&
              !g.adjacent(a, b) && !g.adjacent(a, d) && !g.adjacent(b, d)) {
            return true;
          }
        }
      }
    }
  }
  return false;
}

std::vector<double> random_means(Rng& rng, std::size_t n, MeanDistribution d) {
  std::vector<double> means(n);
  for (double& m : means) m = sample_mean(d, rng);
  return means;
}

TEST(ClawFree, Examples) {
  EXPECT_FALSE(is_claw_free(star_k13()));
  EXPECT_TRUE(is_claw_free(complete_graph(4)));
  EXPECT_TRUE(is_claw_free(FeedbackGraph(5)));
}

TEST(ClawFree, AgreesWithSubsetEnumeration) {
  Rng rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 4 + rng() % 9;
    const auto g = random_gnp(n, 0.15 + 0.6 * uniform01(rng), rng);
    EXPECT_EQ(is_claw_free(g), !has_claw_by_subsets(g));
  }
}

TEST(ClawFree, LargeNeighborhoodsUseMultiWordRows) {
  // A center adjacent to 130 leaves that form two cliques is claw-free;
  // detaching one leaf from both cliques creates a claw.
  const std::size_t n = 131;
  FeedbackGraph g(n);
  for (ArmIndex v = 1; v < n; ++v) g.add_edge(0, v);
  for (ArmIndex a = 1; a < n; ++a) {
    for (ArmIndex b = a + 1; b < n; ++b) {
      if ((a <= 65) == (b <= 65) && a != 130 && b != 130) g.add_edge(a, b);
    }
  }
  EXPECT_FALSE(is_claw_free(g));
  for (ArmIndex a = 66; a < 130; ++a) g.add_edge(a, 130);
  EXPECT_TRUE(is_claw_free(g));
}

TEST(ExactNumbers, Examples) {
  const auto g = build_similarity_graph(std::vector{0.0, 0.05, 0.2, 0.25}, 0.1);
  const GraphStats s = exact_numbers(g);
  EXPECT_EQ(s.alpha, 2u);
  EXPECT_EQ(s.gamma, 2u);
  EXPECT_EQ(s.idom, 2u);
  EXPECT_TRUE(s.claw_free);

  const GraphStats k5 = exact_numbers(complete_graph(5));
  EXPECT_EQ(k5, (GraphStats{1, 1, 1, true}));
  const GraphStats empty4 = exact_numbers(FeedbackGraph(4));
  EXPECT_EQ(empty4, (GraphStats{4, 4, 4, true}));

  const GraphStats star = exact_numbers(star_k13());
  EXPECT_EQ(star, (GraphStats{3, 1, 1, false}));
}

TEST(ExactNumbers, SizeLimit) {
  EXPECT_NO_THROW(exact_numbers(FeedbackGraph(20)));
  EXPECT_THROW(exact_numbers(FeedbackGraph(21)), SizeLimitError);
}

TEST(ExactNumbers, ChainHoldsOnArbitraryGraphs) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const GraphStats s = exact_numbers(random_gnp(n, uniform01(rng), rng));
    EXPECT_LE(s.gamma, s.idom);
    EXPECT_LE(s.idom, s.alpha);
  }
}

TEST(ExactNumbers, SimilarityGraphsSatisfyDominationIdentities) {
  Rng rng(21);
  const MeanDistribution dists[] = {MeanDistribution::uniform01,
                                    MeanDistribution::gaussian01,
                                    MeanDistribution::half_triangle};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const double eps = 0.05 + 0.4 * uniform01(rng);
    const auto means = random_means(rng, n, dists[trial % 3]);
    const GraphStats s = exact_numbers(build_similarity_graph(means, eps));
    EXPECT_TRUE(s.claw_free);
    EXPECT_EQ(s.idom, s.gamma);
    EXPECT_LE(s.alpha, 2 * s.gamma);
  }
}

TEST(SimilarityDomination, MatchesExhaustiveGamma) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 14;
    const double eps = 0.05 + 0.3 * uniform01(rng);
    auto means = random_means(rng, n, MeanDistribution::uniform01);
    if (trial % 4 == 0) {
      for (double& m : means) m = std::round(m * 10.0) / 10.0;
    }
    const auto g = build_similarity_graph(means, eps);
    EXPECT_EQ(similarity_domination_number(means, eps), exact_numbers(g).gamma)
        << "trial " << trial;
  }
  EXPECT_EQ(similarity_domination_number(std::vector<double>{}, 0.1), 0u);
}

}  // namespace
}  // namespace simbandit
