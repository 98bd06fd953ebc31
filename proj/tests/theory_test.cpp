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

#include "simbandit/theory.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "simbandit/graph.hpp"

namespace simbandit {
namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

long double lg(long double t) { return std::log(std::sqrt(2.0L) * t); }

TEST(LowerBound, C1Values) {
  EXPECT_EQ(lower_bound_c1(0.5, 0.1, 1), 0.0);
  EXPECT_EQ(lower_bound_c1(0.9, 0.3, 1), 0.0);
  EXPECT_NEAR(lower_bound_c1(0.5, 0.1, 3), 2.0 * std::log(1.5), 1e-9);
  EXPECT_NEAR(lower_bound_c1(0.5, 0.1, 3), 0.8109, 1e-4);
  for (std::size_t gamma : {2u, 4u, 7u, 10u}) {
    const double eps = 0.1;
    const double dmax = static_cast<double>(gamma) * eps;
    EXPECT_NEAR(lower_bound_c1(dmax, eps, gamma),
                2.0 * std::log(gamma / 2.0 + 0.5), 1e-12);
  }
}

TEST(LowerBound, C1IsNonNegativeWhereDefined) {
  for (double dmax : {0.1, 0.3, 0.7, 1.0}) {
    for (double eps : {0.01, 0.05, 0.2}) {
      for (std::size_t gamma = 1; gamma < 30; ++gamma) {
        if (dmax - (static_cast<double>(gamma) - 2.0) * eps <= 0.0) continue;
        EXPECT_GE(lower_bound_c1(dmax, eps, gamma), 0.0);
      }
    }
  }
}

TEST(LowerBound, InfeasibleDenominator) {
  EXPECT_THROW(lower_bound_c1(0.2, 0.1, 4), InfeasibleInstance);
  EXPECT_THROW(lower_bound_c1(0.2, 0.1, 5), InfeasibleInstance);
  EXPECT_THROW(lower_bound_c1(0.2, 0.0, 2), InvalidInput);
  EXPECT_NEAR(lower_bound_coefficient(0.05, 0.5, 0.1, 3),
              2.0 / 0.05 + 2.0 * std::log(1.5) / 0.1, 1e-9);
}

TEST(Constants, C2AndC3) {
  EXPECT_NEAR(constant_c2(1),
              static_cast<double>(8.0L * (std::log(2.0L) + kPi * kPi / 3.0L)),
              1e-9);
  EXPECT_NEAR(constant_c2(1), 31.864, 1e-3);
  EXPECT_NEAR(constant_c3(1), 18.7046, 1e-4);
  for (std::size_t gamma = 1; gamma <= 100; ++gamma) {
    EXPECT_LT(constant_c3(gamma), constant_c2(gamma));
  }
  EXPECT_THROW(constant_c2(0), InvalidInput);
}

TEST(UpperBounds, MatchDirectEvaluation) {
  const long double T = 1e5L, eps = 0.1L, dmin = 0.03L, dmax = 0.8L;
  const long double c2 = 8.0L * (std::log(6.0L) + kPi * kPi / 3.0L);
  const long double c3 = 8.0L * (std::log(6.0L) + kPi * kPi / 6.0L);
  const long double l = lg(T);
  EXPECT_NEAR(ducb_upper_bound(100000, 0.1, 3, 0.03, 0.8),
              static_cast<double>(64.0L * l * l / dmin + c2 * l / eps + dmax +
                                  4.0L * eps + 1.0L),
              1e-7);
  EXPECT_NEAR(ducb_upper_bound_from_sum(100000, 0.1, 3, 12.5, 0.8),
              static_cast<double>(32.0L * l * l * 12.5L + c2 * l / eps + dmax +
                                  4.0L * eps + 1.0L),
              1e-7);
  EXPECT_NEAR(ucbn_upper_bound(100000, 0.1, 3, 0.03, 0.8),
              static_cast<double>(32.0L * l * l / dmin + c3 * l / eps + dmax +
                                  2.0L * eps + 1.0L),
              1e-7);
  EXPECT_NEAR(cucb_upper_bound(100000, 0.1, 3, 0.02, 0.8),
              static_cast<double>(32.0L * eps * l / (0.02L * 0.02L) +
                                  c2 * l / eps + dmax + 2.0L * eps),
              1e-7);
}

TEST(UpperBounds, GapFreeValue) {
  const double v = ducb_gap_free_bound(10'000, 0.1, 4, 1.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
  EXPECT_NEAR(v, 19398.584787952306, 1e-6);
}

TEST(UpperBounds, CucbFixture) {
  EXPECT_NEAR(cucb_upper_bound(100'000, 0.1, 4, 0.02, 1.0), 99971.37828379925,
              1e-6);
}

TEST(UpperBounds, MonotoneInHorizon) {
  double prev_d = 0.0, prev_c = 0.0, prev_n = 0.0, prev_g = 0.0;
  for (Round t = 2; t < 10'000'000; t = t * 3 / 2 + 1) {
    const double d = ducb_upper_bound(t, 0.05, 5, 0.01, 0.9);
    const double c = cucb_upper_bound(t, 0.05, 5, 0.004, 0.9);
    const double n = ucbn_upper_bound(t, 0.05, 5, 0.01, 0.9);
    const double g = ducb_gap_free_bound(t, 0.05, 5, 0.9);
    EXPECT_GT(d, prev_d);
    EXPECT_GT(c, prev_c);
    EXPECT_GT(n, prev_n);
    EXPECT_GT(g, prev_g);
    prev_d = d;
    prev_c = c;
    prev_n = n;
    prev_g = g;
  }
}

TEST(UpperBounds, CucbGapTermIsInverseSquare) {
  // Isolate the first term by differencing against a huge gap.
  auto first = [](double gap) {
    return cucb_upper_bound(50'000, 0.1, 4, gap, 1.0) -
           cucb_upper_bound(50'000, 0.1, 4, 1e12, 1.0);
  };
  EXPECT_NEAR(first(0.01) / first(0.02), 4.0, 1e-9);
  // Linear in log(sqrt2 T) once the constant terms are removed.
  auto slope = [](Round t) {
    return cucb_upper_bound(t, 0.1, 4, 0.02, 1.0) - 1.0 - 0.2;
  };
  EXPECT_NEAR(slope(1'000'000) / slope(1000),
              static_cast<double>(lg(1e6L) / lg(1e3L)), 1e-12);
}

TEST(UpperBounds, PureAndDeterministic) {
  EXPECT_EQ(ducb_upper_bound(777, 0.03, 9, 0.002, 0.6),
            ducb_upper_bound(777, 0.03, 9, 0.002, 0.6));
  const BallooningBoundInputs in{100'000, 0.1, 1.0 / 0.81, 120.0, 1e-4, 1.0,
                                 4500.0};
  const auto a = ballooning_bounds(in);
  const auto b = ballooning_bounds(in);
  EXPECT_EQ(a.ducb_bl_upper, b.ducb_bl_upper);
  EXPECT_EQ(a.ducb_bl_lower, b.ducb_bl_lower);
  EXPECT_EQ(a.cucb_bl_upper, b.cucb_bl_upper);
}

TEST(GapProfile, Values) {
  const std::vector<double> means{0.1, 0.9, 0.85, 0.5, 0.88};
  const auto g = gap_profile(means, 0.05);
  EXPECT_NEAR(g.delta_min, 0.02, 1e-12);
  EXPECT_NEAR(g.delta_max, 0.8, 1e-12);
  EXPECT_NEAR(g.delta_2eps_min, 0.02, 1e-12);
  EXPECT_NEAR(g.delta_min_T, 0.02, 1e-12);
  EXPECT_NEAR(g.delta_max_T, 0.8, 1e-12);
  const auto wide = gap_profile(means, 0.3);
  EXPECT_NEAR(wide.delta_2eps_min, 0.02, 1e-12);
  const std::vector<double> spaced{0.9, 0.88, 0.87, 0.2};
  EXPECT_NEAR(gap_profile(spaced, 0.05).delta_2eps_min, 0.01, 1e-12);
  EXPECT_THROW(gap_profile(std::vector<double>{0.5}, 0.1), InvalidInput);
}

TEST(GapProfile, Invariants) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> means(2 + rng() % 40);
    for (double& m : means) m = uniform01(rng);
    const auto g = gap_profile(means, 0.1);
    EXPECT_GT(g.delta_min, 0.0);
    EXPECT_LE(g.delta_min, g.delta_max);
    EXPECT_LE(g.delta_2eps_min, g.delta_min);
    EXPECT_LE(g.delta_min_T, g.delta_2eps_min);
  }
}

TEST(BallooningBounds, PlugInB) {
  const double eps = 0.1;
  const double T = 1e5;
  EXPECT_NEAR((1.0 - eps) * eps * T / 2.0, 4500.0, 1e-9);
  EXPECT_NEAR(3.0 * eps * eps * (1.0 - eps) * (1.0 - eps) * T / 4.0, 607.5,
              1e-9);
}

TEST(BallooningBounds, MatchDirectEvaluation) {
  const long double T = 1e5L, eps = 0.1L, b = 1.0L / 0.81L, M = 300.0L,
                    dminT = 1e-3L, dmaxT = 1.0L, B = 4600.0L;
  const long double l = lg(T);
  const long double logb = std::max(std::log(T) / std::log(b), 1.0L);
  const long double head = 40.0L * logb * dmaxT * l / (eps * eps) + 2.0L * dmaxT;
  const auto v = ballooning_bounds(
      {100'000, 0.1, static_cast<double>(b), 300.0, 1e-3, 1.0, 4600.0});
  EXPECT_NEAR(v.ducb_bl_upper,
              static_cast<double>(head + 4.0L * std::sqrt(6.0L * T * M * l) +
                                  2.0L * eps + 2.0L * T * eps * std::exp(-M)),
              1e-6);
  EXPECT_NEAR(v.ducb_bl_lower,
              static_cast<double>(B * eps / 4.0L * (1.0L - std::exp(-B / 8.0L)) -
                                  20.0L * logb * l / eps - eps),
              1e-6);
  const long double le = std::log(std::exp(1.0L) * T);
  EXPECT_NEAR(v.cucb_bl_upper,
              static_cast<double>(head + 96.0L * eps * le * le / (dminT * dminT) +
                                  4.0L * eps),
              1e-3);

  BallooningBoundInputs derived{100'000, 0.1, static_cast<double>(b), 300.0,
                                1e-3, 1.0, 4600.0};
  derived.concentration_constant = 3.0;
  EXPECT_NEAR(ballooning_bounds(derived).ducb_bl_upper,
              static_cast<double>(head + 4.0L * std::sqrt(3.0L * T * M * l) +
                                  2.0L * eps + 2.0L * T * eps * std::exp(-M)),
              1e-6);
  EXPECT_THROW(ballooning_bounds({100, 0.1, 1.0, 1, 1, 1, 1}), InvalidInput);
}

TEST(BallooningBounds, LinearRegretCertificateSign) {
  // Uniform arrivals at eps = 0.1: the lower bound is dominated by its
  // logarithmic penalty at T = 1e5 and turns positive only at much larger T.
  const double eps = 0.1;
  Rng rng(1);
  const double p = edge_probability(MeanDistribution::uniform01, eps, rng);
  const double b = 1.0 / (1.0 - p);
  auto lower = [&](Round t) {
    const double plug_in_b = (1.0 - eps) * eps * static_cast<double>(t) / 2.0;
    return ballooning_bounds({t, eps, b, 1.0, 1e-6, 1.0, plug_in_b})
        .ducb_bl_lower;
  };
  EXPECT_LT(lower(100'000), 0.0);
  EXPECT_GT(lower(1'000'000'000), 0.0);
}

TEST(Estimator, OptimumChangesMatchHarmonicNumber) {
  const auto q =
      estimate_M_B_L(MeanDistribution::uniform01, 10'000, 0.1, 400, 5);
  const double h = harmonic_number(10'000);
  EXPECT_NEAR(h, std::log(1e4) + 0.5772156649, 1e-4);
  EXPECT_LE(std::abs(q.L.mean - h), 3.0 * q.L.std_error);
  for (double l : q.l_replicates) EXPECT_GE(l, 1.0);
}

TEST(Estimator, FullSupportCoverage) {
  const auto q = estimate_M_B_L(MeanDistribution::uniform01, 5000, 0.5, 10, 2);
  EXPECT_EQ(q.M.mean, 5000.0);
  EXPECT_EQ(q.M.std_error, 0.0);
}

TEST(Estimator, BIsBoundedByM) {
  for (auto dist : {MeanDistribution::uniform01, MeanDistribution::gaussian01,
                    MeanDistribution::half_triangle}) {
    const auto q = estimate_M_B_L(dist, 3000, 0.1, 30, 8);
    for (std::size_t r = 0; r < 30; ++r) {
      EXPECT_LE(q.b_replicates[r], q.m_replicates[r]);
    }
  }
}

TEST(Estimator, UniformBMeetsPlugIn) {
  const auto q = estimate_M_B_L(MeanDistribution::uniform01, 20'000, 0.1, 40, 3);
  EXPECT_GE(q.B.mean, (1.0 - 0.1) * 0.1 * 20'000 / 2.0 - 3.0 * q.B.std_error);
}

TEST(Estimator, StandardErrorShrinksWithReplicates) {
  const auto small =
      estimate_M_B_L(MeanDistribution::half_triangle, 1000, 0.1, 400, 11);
  const auto large =
      estimate_M_B_L(MeanDistribution::half_triangle, 1000, 0.1, 800, 12);
  const double ratio = large.M.std_error / small.M.std_error;
  EXPECT_GT(ratio, 0.6);
  EXPECT_LT(ratio, 0.82);
}

TEST(Estimator, ThreadCountDoesNotChangeResults) {
  const auto a =
      estimate_M_B_L(MeanDistribution::gaussian01, 2000, 0.1, 17, 99, 1);
  const auto b =
      estimate_M_B_L(MeanDistribution::gaussian01, 2000, 0.1, 17, 99, 3);
  EXPECT_EQ(a.m_replicates, b.m_replicates);
  EXPECT_EQ(a.b_replicates, b.b_replicates);
  EXPECT_EQ(a.l_replicates, b.l_replicates);
}

TEST(Estimator, GaussianMGrowsLikeLogPowerThreeHalves) {
  std::vector<double> scaled;
  for (Round t : {1000u, 10'000u, 100'000u}) {
    const auto q = estimate_M_B_L(MeanDistribution::gaussian01, t, 0.1, 20, 21);
    const double lt = std::log(static_cast<double>(t));
    scaled.push_back(q.M.mean / (lt * std::sqrt(lt)));
  }
  for (double s : scaled) EXPECT_GT(s, 0.5 * scaled.front());
  for (double s : scaled) EXPECT_LT(s, 2.0 * scaled.front());
}

TEST(Estimator, RejectsBadInput) {
  EXPECT_THROW(estimate_M_B_L(MeanDistribution::uniform01, 10, 0.1, 0, 1),
               InvalidInput);
  EXPECT_THROW(estimate_M_B_L(MeanDistribution::uniform01, 10, -0.1, 3, 1),
               InvalidInput);
}

}  // namespace
}  // namespace simbandit
