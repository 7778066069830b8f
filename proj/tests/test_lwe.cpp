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
#include <sstream>

#include "massart/lwe.hpp"
#include "massart/stats.hpp"
#include "oracles.hpp"

namespace massart {
namespace {

double circ_dist(double a, double b, double q) {
  const double d = std::fmod(std::abs(a - b), q);
  return std::min(d, q - d);
}

// Contingency check: every (x-bin, y-bin) cell count within 3 binomial sd of
// the product of marginals.
void expect_independent(const LweBatch& b, double q, int bins) {
  std::vector<double> cell(static_cast<size_t>(bins * bins), 0.0);
  for (size_t i = 0; i < b.size(); ++i) {
    const int xb = std::min(bins - 1, static_cast<int>(b.x(i)[0] / q * bins));
    const int yb = std::min(bins - 1, static_cast<int>(b.ys[i] / q * bins));
    cell[static_cast<size_t>(xb * bins + yb)] += 1;
  }
  std::vector<double> rx(bins, 0), ry(bins, 0);
  for (int a = 0; a < bins; ++a)
    for (int c = 0; c < bins; ++c) {
      rx[a] += cell[a * bins + c];
      ry[c] += cell[a * bins + c];
    }
  const double m = static_cast<double>(b.size());
  for (int a = 0; a < bins; ++a)
    for (int c = 0; c < bins; ++c) {
      const double p = rx[a] / m * ry[c] / m;
      EXPECT_LE(std::abs(cell[a * bins + c] - m * p),
                3.0 * std::sqrt(m * p * (1 - p)))
          << a << "," << c;
    }
}

TEST(ClassicLwe, NoiselessLimitIsExactInnerProduct) {
  const auto b = gen_classic_lwe(5, 2000, 97, 1e-6, Hypothesis::Alternative,
                                 SecretKind::UniformZq, 3);
  ASSERT_TRUE(b.secret);
  for (size_t i = 0; i < b.size(); ++i)
    EXPECT_EQ(b.ys[i], std::fmod(dot(b.x(i), *b.secret), 97.0));
}

TEST(ClassicLwe, StoredComponentsReproduceLabels) {
  const auto b = gen_classic_lwe(6, 5000, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 4);
  for (size_t i = 0; i < b.size(); ++i) {
    const double want = modq(dot(b.x(i), *b.secret) + b.noise[i], 257.0);
    EXPECT_EQ(b.ys[i], want);
    EXPECT_EQ(b.x(i)[0], std::floor(b.x(i)[0]));
  }
  for (double s : *b.secret) EXPECT_TRUE(s == -1.0 || s == 1.0);
}

TEST(ClassicLwe, NullLabelsIndependentOfSamples) {
  const auto b = gen_classic_lwe(4, 100000, 257, 3.0, Hypothesis::Null,
                                 SecretKind::Binary, 5);
  EXPECT_FALSE(b.secret);
  expect_independent(b, 257.0, 4);
}

TEST(ClassicLwe, DeterministicPerSeed) {
  const auto a = gen_classic_lwe(3, 9000, 101, 2.0, Hypothesis::Alternative,
                                 SecretKind::UniformZq, 77);
  const auto b = gen_classic_lwe(3, 9000, 101, 2.0, Hypothesis::Alternative,
                                 SecretKind::UniformZq, 77);
  EXPECT_EQ(a.xs, b.xs);
  EXPECT_EQ(a.ys, b.ys);
}

TEST(ClassicLwe, RejectsBadModulus) {
  EXPECT_THROW(gen_classic_lwe(3, 10, 1, 2.0, Hypothesis::Null, SecretKind::Binary, 1),
               InvalidInput);
  EXPECT_THROW(gen_classic_lwe(3, 10, (1ULL << 31) + 1, 2.0, Hypothesis::Null,
                               SecretKind::Binary, 1),
               InvalidInput);
}

TEST(ContinuizeNoise, IdentityTargetRejected) {
  const auto b = gen_classic_lwe(4, 100, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 6);
  EXPECT_THROW(continuize_noise(b, 3.0, 1), InvalidInput);
}

TEST(ContinuizeNoise, RecoveredNoiseIsContinuousGaussianAtTarget) {
  const auto b = gen_classic_lwe(4, 100000, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 7);
  const auto c = continuize_noise(b, 5.0, 8);
  std::vector<double> z;
  for (size_t i = 0; i < c.size(); ++i) z.push_back(recovered_noise(c, i));
  const double sd = 5.0 / std::sqrt(2 * oracle::kPi);
  EXPECT_GT(ks_one_sample(z, [&](double x) { return oracle::normal_cdf(x, sd); }).p,
            0.01);
  EXPECT_DOUBLE_EQ(c.sigma, 5.0);
}

TEST(ContinuizeNoise, NullLabelsStayUniform) {
  const auto b = gen_classic_lwe(4, 100000, 257, 3.0, Hypothesis::Null,
                                 SecretKind::Binary, 9);
  const auto c = continuize_noise(b, 5.0, 10);
  EXPECT_GT(ks_one_sample(c.ys, [](double y) { return std::clamp(y / 257.0, 0.0, 1.0); }).p,
            0.01);
}

TEST(ContinuizeSamples, CoordinatesUniformOnModulus) {
  const auto b = gen_classic_lwe(4, 100000, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 11);
  const auto c = continuize_samples(continuize_noise(b, 5.0, 12), 3.0, 13);
  for (int j = 0; j < 4; ++j) {
    std::vector<double> col;
    for (size_t i = 0; i < c.size(); ++i) col.push_back(c.x(i)[j]);
    EXPECT_GT(ks_one_sample(col, [](double x) { return std::clamp(x / 257.0, 0.0, 1.0); }).p,
              0.01 / 4);
  }
}

TEST(ContinuizeSamples, NoiseSpreadTracksSecretNorm) {
  const auto b = gen_classic_lwe(4, 100000, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 14);
  const auto c = continuize_samples(continuize_noise(b, 5.0, 15), 3.0, 16);
  double ss = 0.0, m2 = 0.0;
  for (double s : *c.secret) ss += s * s;
  for (size_t i = 0; i < c.size(); ++i) m2 += std::pow(recovered_noise(c, i), 2);
  const double sd = std::sqrt(m2 / c.size());
  const double want = std::sqrt(25.0 + ss * 9.0) / std::sqrt(2 * oracle::kPi);
  EXPECT_NEAR(sd / want, 1.0, 0.05);
  EXPECT_NEAR(c.sigma, std::sqrt(25.0 + ss * 9.0), 1e-12);
  // Stored noise tracks the recovered value.
  for (size_t i = 0; i < 1000; ++i)
    EXPECT_LT(circ_dist(c.noise[i], recovered_noise(c, i), 257.0), 1e-8);
}

TEST(ContinuizeSamples, NullStaysIndependent) {
  const auto b = gen_classic_lwe(4, 100000, 257, 3.0, Hypothesis::Null,
                                 SecretKind::Binary, 17);
  expect_independent(continuize_samples(continuize_noise(b, 5.0, 18), 3.0, 19),
                     257.0, 4);
}

TEST(Rescale, DividesByModulus) {
  LweBatch b;
  b.n = 2;
  b.domain = Domain::ModQ;
  b.q = 2;
  b.xs = {1.0, 0.0};
  b.ys = {1.5};
  const auto u = rescale_to_unit(b);
  EXPECT_EQ(u.domain, Domain::UnitTorus);
  EXPECT_DOUBLE_EQ(u.xs[0], 0.5);
  EXPECT_DOUBLE_EQ(u.xs[1], 0.0);
  EXPECT_DOUBLE_EQ(u.ys[0], 0.75);
}

TEST(Rescale, AlternativeRelationSurvives) {
  const auto b = gen_classic_lwe(4, 5000, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 20);
  const auto u = rescale_to_unit(continuize_samples(continuize_noise(b, 5.0, 21), 3.0, 22));
  for (size_t i = 0; i < u.size(); ++i)
    EXPECT_LT(circ_dist(mod1(dot(u.x(i), *u.secret) + u.noise[i]), u.ys[i], 1.0), 1e-9);
  EXPECT_THROW(rescale_to_unit(u), InvalidInput);
}

TEST(Chain, TwoSampleMatchesDirectContinuousLwe) {
  const auto b = gen_classic_lwe(4, 30000, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 23);
  const auto u = rescale_to_unit(continuize_samples(continuize_noise(b, 5.0, 24), 3.0, 25));
  const auto d = gen_continuous_lwe(4, 30000, u.sigma, Hypothesis::Alternative,
                                    *u.secret, 26);
  std::vector<double> za, zb;
  for (size_t i = 0; i < u.size(); ++i) {
    za.push_back(recovered_noise(u, i));
    zb.push_back(recovered_noise(d, i));
  }
  for (int j = 0; j < 4; ++j) {
    std::vector<double> ca, cb;
    for (size_t i = 0; i < u.size(); ++i) {
      ca.push_back(u.x(i)[j]);
      cb.push_back(d.x(i)[j]);
    }
    EXPECT_GT(ks_two_sample(ca, cb).p, 0.01 / 6);
  }
  EXPECT_GT(ks_two_sample(u.ys, d.ys).p, 0.01 / 6);
  EXPECT_GT(ks_two_sample(za, zb).p, 0.01 / 6);
}

TEST(ContinuousLwe, AlternativeLabelsUniformOnTorus) {
  const auto b = gen_continuous_lwe(4, 100000, 1e-4, Hypothesis::Alternative, 30);
  EXPECT_GT(ks_one_sample(b.ys, [](double y) { return std::clamp(y, 0.0, 1.0); }).p, 0.01);
  for (size_t i = 0; i < 1000; ++i)
    EXPECT_LT(circ_dist(mod1(dot(b.x(i), *b.secret) + b.noise[i]), b.ys[i], 1.0), 1e-12);
}

TEST(ContinuousLwe, NullIndependent) {
  expect_independent(gen_continuous_lwe(4, 100000, 0.01, Hypothesis::Null, 31), 1.0, 4);
}

TEST(BatchIo, RoundTripPreservesEverything) {
  const auto b = gen_classic_lwe(3, 500, 257, 3.0, Hypothesis::Alternative,
                                 SecretKind::Binary, 40);
  const auto c = continuize_noise(b, 4.0, 41);
  std::stringstream ss;
  write_batch(ss, c);
  const auto r = read_batch(ss);
  EXPECT_EQ(r.n, c.n);
  EXPECT_EQ(r.q, c.q);
  EXPECT_EQ(r.domain, c.domain);
  EXPECT_EQ(r.tag, c.tag);
  EXPECT_EQ(r.sigma, c.sigma);
  EXPECT_EQ(r.integer_x, c.integer_x);
  EXPECT_EQ(r.discrete_noise, c.discrete_noise);
  EXPECT_EQ(*r.secret, *c.secret);
  EXPECT_EQ(r.xs, c.xs);
  EXPECT_EQ(r.ys, c.ys);
  EXPECT_EQ(r.noise, c.noise);
}

TEST(BatchIo, RejectsGarbage) {
  std::stringstream ss("not a batch at all");
  EXPECT_ANY_THROW(read_batch(ss));
}

TEST(Sources, CountConsumptionAndExhaust) {
  const auto b = gen_continuous_lwe(2, 3, 0.01, Hypothesis::Null, 50);
  BatchSource src(b);
  std::vector<double> x(2);
  double y;
  int got = 0;
  while (src.next(x, y)) ++got;
  EXPECT_EQ(got, 3);
  EXPECT_EQ(src.consumed(), 3u);
  ContinuousLweStream st(2, 0.01, Hypothesis::Null, {}, 51);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(st.next(x, y));
  EXPECT_EQ(st.consumed(), 10u);
}

}  // namespace
}  // namespace massart
