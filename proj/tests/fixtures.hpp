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

// Shared run builders for the statistical tests.
#ifndef MASSART_TESTS_FIXTURES_HPP_
#define MASSART_TESTS_FIXTURES_HPP_

#include <vector>

#include "massart/instance_builder.hpp"
#include "massart/lwe.hpp"
#include "massart/rejection.hpp"

namespace fixture {

using namespace massart;

// Labeling and distinguisher parameters: separated intervals, tiny noise.
inline MassartConfig desk(double eta, size_t m_prime) {
  MassartConfig c;
  c.params.n = 8;
  c.params.t = 0.125;
  c.params.eps = 0.125 / 32;
  c.params.sigma = 1e-4;
  c.params.delta = 0.01;
  c.eta = eta;
  c.c_prime = 0.02;
  c.m_prime = m_prime;
  c.m = 64 * m_prime;
  c.d = 2;
  return c;
}

// Density parameters: t/eps = 8 and visible output noise.
inline ReductionParams density_plus() {
  ReductionParams p;
  p.n = 8;
  p.t = 0.16;
  p.eps = 0.02;
  p.psi = 0.0;
  p.B = IntervalSet::single(0.0, 0.02);
  p.sigma = 0.05;
  return p;
}

struct Instance {
  std::vector<double> secret;
  std::vector<LabeledSample> samples;
  size_t consumed = 0;
  bool ok = false;
};

inline Instance make_instance(const MassartConfig& cfg, Hypothesis tag,
                              uint64_t seed) {
  Instance out;
  Rng srng = make_rng(seed, 100);
  out.secret = draw_binary_secret(cfg.params.n, srng);
  ContinuousLweStream src(cfg.params.n, cfg.params.sigma, tag, out.secret,
                          derive_seed(seed, 101));
  Rng rng = make_rng(seed, 102);
  auto r = generate_instance(src, cfg, rng);
  out.ok = r.ok();
  out.consumed = r.consumed;
  out.samples = std::move(r.samples);
  return out;
}

// Accepted outputs of a single rejection branch.
inline std::vector<std::vector<double>> branch_run(const ReductionParams& p,
                                                   Hypothesis tag,
                                                   const std::vector<double>& s,
                                                   size_t accepts,
                                                   uint64_t seed) {
  RejectionSampler rs(p);
  ContinuousLweStream src(p.n, p.sigma, tag, s, derive_seed(seed, 1));
  Rng rng = make_rng(seed, 2);
  std::vector<std::vector<double>> out;
  out.reserve(accepts);
  std::vector<double> x(static_cast<size_t>(p.n));
  double y;
  while (out.size() < accepts) {
    src.next(x, y);
    if (auto r = rs(x, y, rng)) out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace fixture

#endif  // MASSART_TESTS_FIXTURES_HPP_
