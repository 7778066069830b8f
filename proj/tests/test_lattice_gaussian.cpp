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
#include <map>
#include <vector>

#include "massart/lattice_gaussian.hpp"
#include "massart/stats.hpp"
#include "oracles.hpp"

namespace massart {
namespace {

TEST(RhoWeight, OriginHasUnitWeight) { EXPECT_DOUBLE_EQ(rho_weight(0.0, 1.0), 1.0); }

TEST(RhoWeight, UnitPointAtUnitScale) {
  EXPECT_NEAR(rho_weight(1.0, 1.0), 0.0432139, 1e-7);
  EXPECT_DOUBLE_EQ(rho_weight(1.0, 1.0), std::exp(-oracle::kPi));
}

TEST(RhoWeight, VectorFactorizesOverCoordinates) {
  const std::vector<double> x{1.0, 1.0};
  EXPECT_NEAR(rho_weight(x, 1.0), std::exp(-2 * oracle::kPi), 1e-15);
  EXPECT_NEAR(rho_weight(x, 1.0), rho_weight(1.0, 1.0) * rho_weight(1.0, 1.0),
              1e-15);
}

TEST(RhoWeight, ScaleFactorIsInverseSigmaPerCoordinate) {
  const std::vector<double> zero{0.0, 0.0, 0.0};
  EXPECT_NEAR(rho_weight(zero, 2.0), 0.125, 1e-15);
}

TEST(RhoWeight, RejectsBadInput) {
  EXPECT_THROW(rho_weight(1.0, 0.0), InvalidInput);
  EXPECT_THROW(rho_weight(1.0, -1.0), InvalidInput);
  EXPECT_THROW(rho_weight(NAN, 1.0), InvalidInput);
}

TEST(LatticeRhoSum, MatchesDirectSumOnBothBranches) {
  for (double sigma : {0.05, 0.3, 1.0, 2.5, 7.0}) {
    for (double spacing : {0.17, 1.0, 2.0}) {
      for (double shift : {0.0, 0.013, -0.4, 3.3}) {
        double direct = 0.0;
        for (long k = -4000; k <= 4000; ++k) {
          const double x = shift + spacing * static_cast<double>(k);
          direct += std::exp(-oracle::kPi * x * x / (sigma * sigma));
        }
        direct /= sigma;
        EXPECT_NEAR(lattice_rho_sum(shift, spacing, sigma), direct,
                    1e-10 * std::max(1.0, direct))
            << sigma << " " << spacing << " " << shift;
      }
    }
  }
}

TEST(TailMassBound, TinyAtDefaultRadius) {
  EXPECT_LT(tail_mass_bound(1.0, 1.0), 1e-100);
  EXPECT_LT(tail_mass_bound(2.0, 2.0), 1e-100);
  EXPECT_THROW(tail_mass_bound(1.0, 1.0, TruncationPolicy{4.0}), InvalidInput);
}

TEST(DiscreteWindow, RatioOfCenterToNeighbourIsExpPi) {
  const auto w = discrete_gaussian_window({1.0, 0.0}, 1.0);
  double p0 = 0, p1 = 0;
  for (size_t i = 0; i < w.points.size(); ++i) {
    if (w.points[i] == 0.0) p0 = w.probs[i];
    if (w.points[i] == 1.0) p1 = w.probs[i];
  }
  EXPECT_NEAR(p0 / p1, std::exp(oracle::kPi), 1e-9);
}

TEST(DiscreteWindow, SymmetricAboutZeroForCenteredLattice) {
  for (double sigma : {0.5, 1.0, 3.0}) {
    const auto w = discrete_gaussian_window({1.0, 0.0}, sigma);
    std::map<double, double> pm;
    for (size_t i = 0; i < w.points.size(); ++i) pm[w.points[i]] = w.probs[i];
    for (const auto& [x, p] : pm)
      if (pm.count(-x)) EXPECT_NEAR(p, pm[-x], 1e-15);
  }
}

TEST(DiscreteWindow, MatchesBruteForcePmf) {
  const auto pmf = oracle::lattice_pmf(2.0, 0.3, 2.0);
  const auto w = discrete_gaussian_window({2.0, 0.3}, 2.0);
  double total = 0.0;
  for (size_t i = 0; i < w.points.size(); ++i) {
    const long k = oracle::lattice_index(w.points[i], 2.0, 0.3);
    ASSERT_TRUE(pmf.count(k));
    EXPECT_NEAR(w.probs[i], pmf.at(k), 1e-12);
    total += w.probs[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(DiscreteSampler, EmpiricalPmfMatchesBruteForce) {
  const auto pmf = oracle::lattice_pmf(2.0, 0.3, 2.0);
  Rng rng(7);
  std::map<long, double> counts;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i)
    counts[oracle::lattice_index(
        sample_discrete_gaussian_1d({2.0, 0.3}, 2.0, rng), 2.0, 0.3)] += 1.0;
  double linf = 0.0;
  for (const auto& [k, p] : pmf)
    linf = std::max(linf, std::abs(counts[k] / draws - p));
  EXPECT_LE(linf, 0.005);
}

TEST(DiscreteSampler, OutputsLieOnTheLattice) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = sample_discrete_gaussian_1d({0.7, 0.21}, 1.3, rng);
    const double r = (x - 0.21) / 0.7;
    EXPECT_NEAR(r, std::round(r), 1e-9);
  }
}

TEST(DiscreteSampler, IntegerShiftGivesSameDraws) {
  Rng a(11), b(11);
  for (int i = 0; i < 1000; ++i)
    EXPECT_DOUBLE_EQ(sample_discrete_gaussian_1d({1.0, 0.0}, 1.5, a),
                     sample_discrete_gaussian_1d({1.0, 3.0}, 1.5, b));
}

TEST(DiscreteSampler, RejectsBadLattice) {
  Rng rng(1);
  EXPECT_THROW(sample_discrete_gaussian_1d({0.0, 0.0}, 1.0, rng), InvalidInput);
  EXPECT_THROW(sample_discrete_gaussian_1d({1.0, 0.0}, 0.0, rng), InvalidInput);
}

TEST(ShiftedLatticeNd, JointPmfIsProductOfMarginals) {
  const std::vector<double> v{0.5, 0.25};
  const auto p0 = oracle::lattice_pmf(1.0, 0.5, 2.0);
  const auto p1 = oracle::lattice_pmf(1.0, 0.25, 2.0);
  Rng rng(5);
  std::map<std::pair<long, long>, double> counts;
  const int draws = 1000000;
  std::vector<double> out(2);
  for (int i = 0; i < draws; ++i) {
    sample_shifted_lattice_gaussian_nd(v, 2.0, rng, out);
    counts[{oracle::lattice_index(out[0], 1.0, 0.5),
            oracle::lattice_index(out[1], 1.0, 0.25)}] += 1.0;
  }
  double linf = 0.0;
  for (long a = -3; a <= 2; ++a)
    for (long b = -3; b <= 2; ++b)
      linf = std::max(linf, std::abs(counts[{a, b}] / draws -
                                     p0.at(a) * p1.at(b)));
  EXPECT_LE(linf, 0.01);
}

TEST(ShiftedLatticeNd, CenteredMarginalIsOneDimensionalSampler) {
  const std::vector<double> v{0.0, 0.0};
  const auto pmf = oracle::lattice_pmf(1.0, 0.0, 1.0);
  Rng rng(9);
  std::map<long, double> c0, c1;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto x = sample_shifted_lattice_gaussian_nd(v, 1.0, rng);
    c0[std::lround(x[0])] += 1;
    c1[std::lround(x[1])] += 1;
  }
  for (long k = -2; k <= 2; ++k) {
    EXPECT_NEAR(c0[k] / draws, pmf.at(k), 0.005);
    EXPECT_NEAR(c1[k] / draws, pmf.at(k), 0.005);
  }
}

TEST(Expanded, ScaledOutputIsNormalWithVarianceOneOverTwoPi) {
  Rng rng(21);
  std::vector<double> v;
  for (int i = 0; i < 50000; ++i) v.push_back(sample_expanded(1, 3.0, rng)[0] / 3.0);
  const double sd = 1.0 / std::sqrt(2 * oracle::kPi);
  const auto ks = ks_one_sample(v, [&](double x) { return oracle::normal_cdf(x, sd); });
  EXPECT_GT(ks.p, 0.01);
}

TEST(Expanded, ReducedModOneIsUniform) {
  Rng rng(22);
  std::vector<double> v;
  for (int i = 0; i < 100000; ++i) v.push_back(mod1(sample_expanded(1, 1.0, rng)[0]));
  const auto ks = ks_one_sample(v, [](double x) { return std::clamp(x, 0.0, 1.0); });
  EXPECT_GT(ks.p, 0.01);
}

TEST(Expanded, NarrowScaleStaysNearTheUniformShift) {
  Rng rng(23);
  double s = 0, s2 = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double x = sample_expanded(1, 0.01, rng)[0];
    s += x;
    s2 += x * x;
  }
  const double var = s2 / draws - (s / draws) * (s / draws);
  // Output is essentially the lattice point nearest zero, uniform on
  // [-1/2, 1/2): variance 1/12 plus the tiny discrete spread.
  EXPECT_NEAR(var, 1.0 / 12.0, 0.002);
}

TEST(Collapsed, CoordinatesUniformAtModerateScale) {
  Rng rng(31);
  std::vector<double> a, b;
  for (int i = 0; i < 100000; ++i) {
    const auto x = sample_collapsed(2, 3.0, rng);
    a.push_back(x[0]);
    b.push_back(x[1]);
  }
  auto unif = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_GT(ks_one_sample(a, unif).p, 0.01);
  EXPECT_GT(ks_one_sample(b, unif).p, 0.01);
}

TEST(Collapsed, LargeScaleHistogramCloseToUniform) {
  Rng rng(32);
  std::vector<double> v;
  for (int i = 0; i < 100000; ++i) v.push_back(sample_collapsed(1, 50.0, rng)[0]);
  auto h = histogram(v, linear_edges(0.0, 1.0, 5));
  for (double& c : h) c /= static_cast<double>(v.size());
  const std::vector<double> flat(5, 0.2);
  EXPECT_LE(l1_distance(h, flat), 0.01);
}

TEST(Collapsed, NarrowScaleMatchesPeriodizedDensity) {
  Rng rng(33);
  std::vector<double> v;
  for (int i = 0; i < 100000; ++i) v.push_back(sample_collapsed(1, 0.05, rng)[0]);
  const auto edges = linear_edges(0.0, 1.0, 50);
  auto h = histogram(v, edges);
  for (double& c : h) c /= static_cast<double>(v.size());
  std::vector<double> ref;
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    ref.push_back(oracle::simpson(
        [](double u) { return oracle::periodized_gaussian(u, 0.05); },
        edges[i], edges[i + 1], 200));
  EXPECT_LE(l1_distance(h, ref), 0.02);
  EXPECT_LT(oracle::periodized_gaussian(0.5, 0.05), 1e-30);
}

TEST(SmoothingThreshold, ReferenceValues) {
  EXPECT_NEAR(smoothing_threshold(1, 1 - 1e-9), std::sqrt(std::log(4.0) / oracle::kPi), 1e-8);
  EXPECT_NEAR(smoothing_threshold(1, 1 - 1e-9), 0.664, 5e-4);
  EXPECT_NEAR(smoothing_threshold(1, 0.01), std::sqrt(std::log(202.0) / oracle::kPi), 1e-12);
  EXPECT_NEAR(smoothing_threshold(1, 0.01), 1.300, 5e-4);
}

TEST(SmoothingThreshold, IncreasesWithDimension) {
  for (double eps : {0.001, 0.1, 0.5})
    EXPECT_GT(smoothing_threshold(2, eps), smoothing_threshold(1, eps));
  EXPECT_THROW(smoothing_threshold(1, 0.0), InvalidInput);
}

TEST(CollapsedDensity, UnitScaleAtOrigin) {
  const std::vector<double> u{0.0};
  EXPECT_NEAR(collapsed_density(u, 1.0), oracle::periodized_gaussian(0.0, 1.0), 1e-14);
  EXPECT_NEAR(collapsed_density(u, 1.0), 1.0864, 5e-5);
}

TEST(CollapsedDensity, WithinEpsAboveSmoothingThreshold) {
  Rng rng(41);
  for (int n : {1, 3}) {
    for (double eps : {0.5, 0.05, 0.001}) {
      const double sigma = smoothing_threshold(n, eps);
      for (int i = 0; i < 50; ++i) {
        std::vector<double> u(n);
        for (double& x : u) x = uniform01(rng);
        const double d = collapsed_density(u, sigma);
        EXPECT_GE(d, 1 - eps);
        EXPECT_LE(d, 1 + eps);
      }
    }
  }
}

TEST(CollapsedDensity, ReflectionSymmetry) {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> u{uniform01(rng) * 0.999 + 0.0005, uniform01(rng) * 0.999 + 0.0005};
    const std::vector<double> r{1 - u[0], 1 - u[1]};
    EXPECT_NEAR(collapsed_density(u, 0.4), collapsed_density(r, 0.4), 1e-12);
  }
}

TEST(CollapsedDensity, RejectsPointsOutsideTorus) {
  const std::vector<double> u{1.0};
  EXPECT_THROW(collapsed_density(u, 1.0), InvalidInput);
}

}  // namespace
}  // namespace massart
