// Copyright 2026 The massart-lwe Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "massart/interval_set.hpp"
#include "massart/stats.hpp"
#include "oracles.hpp"

namespace massart {
namespace {

TEST(IntervalSet, NormalizesReversedAndOverlappingParts) {
  const IntervalSet s({{0.5, 0.2}, {0.4, 0.9}, {1.0, 1.0}, {2.0, 3.0}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_DOUBLE_EQ(s.intervals()[0].lo, 0.2);
  EXPECT_DOUBLE_EQ(s.intervals()[0].hi, 0.9);
  EXPECT_DOUBLE_EQ(s.measure(), 1.7);
}

TEST(IntervalSet, HalfOpenMembership) {
  const auto s = IntervalSet::single(0.0, 1.0);
  EXPECT_TRUE(s.contains(0.0));
  EXPECT_TRUE(s.contains(0.999));
  EXPECT_FALSE(s.contains(1.0));
  EXPECT_FALSE(s.contains(-1e-12));
}

// Membership-based oracle: set algebra agrees pointwise with boolean algebra.
TEST(IntervalSet, AlgebraMatchesPointwiseLogic) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Interval> ra, rb;
    for (int i = 0; i < 5; ++i) ra.push_back({u(rng), u(rng)});
    for (int i = 0; i < 5; ++i) rb.push_back({u(rng), u(rng)});
    const IntervalSet a(ra), b(rb);
    const auto uni = a.unite(b), in = a.intersect(b), sub = a.subtract(b);
    double mu = 0, mi = 0, ms = 0;
    const int probes = 20000;
    for (int i = 0; i < probes; ++i) {
      const double x = 10.0 * (i + 0.5) / probes;
      const bool pa = a.contains(x), pb = b.contains(x);
      EXPECT_EQ(uni.contains(x), pa || pb);
      EXPECT_EQ(in.contains(x), pa && pb);
      EXPECT_EQ(sub.contains(x), pa && !pb);
      mu += pa || pb;
      mi += pa && pb;
      ms += pa && !pb;
    }
    EXPECT_NEAR(uni.measure(), 10.0 * mu / probes, 2e-3 * 10);
    EXPECT_NEAR(in.measure(), 10.0 * mi / probes, 2e-3 * 10);
    EXPECT_NEAR(sub.measure(), 10.0 * ms / probes, 2e-3 * 10);
    EXPECT_NEAR(sub.measure() + in.measure(), a.measure(), 1e-12);
  }
}

TEST(IntervalSet, WithinAndBounds) {
  const IntervalSet s({{1.0, 2.0}, {3.0, 4.0}});
  EXPECT_DOUBLE_EQ(s.lower(), 1.0);
  EXPECT_DOUBLE_EQ(s.upper(), 4.0);
  EXPECT_TRUE(s.within(1.0, 4.0));
  EXPECT_FALSE(s.within(1.5, 4.0));
  EXPECT_TRUE(IntervalSet().empty());
}

TEST(Stats, GaussianCdfUsesUnitConvention) {
  const double sd = 1.0 / std::sqrt(2 * oracle::kPi);
  for (double x : {-1.0, -0.2, 0.0, 0.3, 1.1})
    EXPECT_NEAR(gaussian_cdf(x, 1.0), oracle::normal_cdf(x, sd), 1e-14);
}

TEST(Stats, KolmogorovPvalueReferencePoints) {
  // Asymptotic Kolmogorov tail: P(K > 1.358) ~ 0.05, P(K > 1.628) ~ 0.01.
  EXPECT_NEAR(kolmogorov_pvalue(1.358 / std::sqrt(1e6), 1e6), 0.05, 2e-3);
  EXPECT_NEAR(kolmogorov_pvalue(1.628 / std::sqrt(1e6), 1e6), 0.01, 1e-3);
  EXPECT_NEAR(kolmogorov_pvalue(0.0, 100), 1.0, 1e-12);
}

TEST(Stats, KsDetectsShiftAndAcceptsSameLaw) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n0(0, 1), n1(0.1, 1);
  std::vector<double> a, b, c;
  for (int i = 0; i < 20000; ++i) {
    a.push_back(n0(rng));
    b.push_back(n0(rng));
    c.push_back(n1(rng));
  }
  EXPECT_GT(ks_two_sample(a, b).p, 0.01);
  EXPECT_LT(ks_two_sample(a, c).p, 1e-6);
  auto cdf = [](double x) { return oracle::normal_cdf(x, 1.0); };
  EXPECT_GT(ks_one_sample(a, cdf).p, 0.01);
  EXPECT_LT(ks_one_sample(c, cdf).p, 1e-6);
}

TEST(Stats, HistogramLumpsTailsIntoEndBins) {
  const std::vector<double> v{-5, 0.1, 0.6, 0.7, 9};
  const auto h = histogram(v, linear_edges(0.0, 1.0, 2));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_DOUBLE_EQ(h[0], 2);
  EXPECT_DOUBLE_EQ(h[1], 3);
}

}  // namespace
}  // namespace massart
