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

#include "massart/distinguish.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "massart/verify.hpp"

namespace massart {

PlantedRegionLearner::PlantedRegionLearner(std::vector<double> secret,
                                           double t, double eps,
                                           double c_prime)
    : secret_(std::move(secret)), t_(t), eps_(eps), c_prime_(c_prime) {}

Classifier PlantedRegionLearner::fit(const std::vector<LabeledSample>&) {
  auto region = std::make_shared<PtfRegion>(t_, eps_, c_prime_);
  const double norm = std::sqrt(dot(secret_, secret_));
  return [region, s = secret_, norm](std::span<const double> x) {
    return (*region)(dot(x, s) / norm);
  };
}

Classifier ConstantLearner::fit(const std::vector<LabeledSample>& train) {
  long bal = 0;
  for (const auto& s : train) bal += s.y;
  const int label = bal >= 0 ? 1 : -1;
  return [label](std::span<const double>) { return label; };
}

SgdHalfspaceLearner::SgdHalfspaceLearner(int d, int epochs, double rate,
                                         uint64_t seed)
    : d_(d), epochs_(epochs), rate_(rate), seed_(seed) {}

Classifier SgdHalfspaceLearner::fit(const std::vector<LabeledSample>& train) {
  if (train.empty()) return [](std::span<const double>) { return 1; };
  // Unit-scale Gaussian coordinates have sd 1/sqrt(2 pi); rescale to sd 1.
  const double scale = std::sqrt(2.0 * kPi);
  const int d = d_;
  auto features = [d, scale](std::span<const double> x) {
    std::vector<double> z(x.begin(), x.end());
    for (double& v : z) v *= scale;
    return veronese_lift(z, d);
  };
  std::vector<std::vector<double>> f;
  f.reserve(train.size());
  for (const auto& s : train) f.push_back(features(s.x));
  std::vector<double> w(f.front().size(), 0.0);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed_);
  size_t step = 0;
  for (int e = 0; e < epochs_; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t i : order) {
      const double margin = train[i].y * dot(w, f[i]);
      const double g = -train[i].y / (1.0 + std::exp(margin));
      const double lr = rate_ / std::sqrt(1.0 + static_cast<double>(step++) / 1000.0);
      for (size_t j = 0; j < w.size(); ++j) w[j] -= lr * g * f[i][j];
    }
  }
  return [w, features](std::span<const double> x) {
    return dot(w, features(x)) >= 0.0 ? 1 : -1;
  };
}

double test_error(const Classifier& h, const std::vector<LabeledSample>& test) {
  if (test.empty()) return 0.0;
  size_t wrong = 0;
  for (const auto& s : test)
    if (h(s.x) != s.y) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(test.size());
}

namespace {

struct TrialOutcome {
  bool says_alt = false;
  double error = 0.0;
  bool failed = false;
  bool constant = false;
};

TrialOutcome run_one(const DistinguisherSpec& spec, Learner& learner,
                     Hypothesis tag, const std::vector<double>& secret,
                     uint64_t seed) {
  const int n = spec.cfg.params.n;
  ContinuousLweStream stream(n, spec.cfg.params.sigma, tag, secret,
                             derive_seed(seed, 1));
  Rng rng = make_rng(seed, 2);
  const auto inst = generate_instance(stream, spec.cfg, rng);
  TrialOutcome out;
  if (!inst.ok()) {
    out.failed = true;
    out.says_alt = uniform01(rng) < 0.5;
    return out;
  }
  const auto split = static_cast<size_t>(spec.train_fraction *
                                         static_cast<double>(inst.samples.size()));
  const std::vector<LabeledSample> train(inst.samples.begin(),
                                         inst.samples.begin() + split);
  const std::vector<LabeledSample> test(inst.samples.begin() + split,
                                        inst.samples.end());
  const Classifier h = learner.fit(train);
  out.error = test_error(h, test);
  out.says_alt = out.error < spec.tau;
  if (!test.empty()) {
    const int first = h(test.front().x);
    out.constant = std::all_of(test.begin(), test.end(), [&](const auto& s) {
      return h(s.x) == first;
    });
  }
  return out;
}

}  // namespace

AdvantageReport run_distinguisher(const DistinguisherSpec& spec,
                                  const LearnerFactory& factory) {
  AdvantageReport rep;
  rep.trials = spec.trials;
  rep.underpowered = spec.trials < 50;
  size_t alt_yes = 0, null_yes = 0;
  for (size_t i = 0; i < spec.trials; ++i) {
    Rng srng = make_rng(spec.seed, 3 * i);
    const auto secret = draw_binary_secret(spec.cfg.params.n, srng);
    auto learner = factory(secret);
    rep.learner = learner->name();
    const auto a = run_one(spec, *learner, Hypothesis::Alternative, secret,
                           derive_seed(spec.seed, 3 * i + 1));
    const auto b = run_one(spec, *learner, Hypothesis::Null, secret,
                           derive_seed(spec.seed, 3 * i + 2));
    alt_yes += a.says_alt;
    null_yes += b.says_alt;
    rep.failures += a.failed + b.failed;
    rep.mean_error_alt += a.error;
    rep.mean_error_null += b.error;
    rep.degenerate = rep.degenerate || a.constant || b.constant;
  }
  const double T = static_cast<double>(std::max<size_t>(spec.trials, 1));
  rep.p_alt = alt_yes / T;
  rep.p_null = null_yes / T;
  rep.mean_error_alt /= T;
  rep.mean_error_null /= T;
  rep.advantage = rep.p_alt - rep.p_null;
  const double se = std::sqrt(rep.p_alt * (1 - rep.p_alt) / T +
                              rep.p_null * (1 - rep.p_null) / T);
  rep.ci_low = rep.advantage - 1.96 * se;
  rep.ci_high = rep.advantage + 1.96 * se;
  return rep;
}

}  // namespace massart
