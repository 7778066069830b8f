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

#ifndef MASSART_DISTINGUISH_HPP_
#define MASSART_DISTINGUISH_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "massart/instance_builder.hpp"

namespace massart {

using Classifier = std::function<int(std::span<const double>)>;

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual Classifier fit(const std::vector<LabeledSample>& train) = 0;
};

// Knows the planted direction and applies the interval-union classifier.
class PlantedRegionLearner : public Learner {
 public:
  PlantedRegionLearner(std::vector<double> secret, double t, double eps,
                       double c_prime);
  std::string name() const override { return "planted"; }
  Classifier fit(const std::vector<LabeledSample>& train) override;

 private:
  std::vector<double> secret_;
  double t_, eps_, c_prime_;
};

// Predicts the majority training label.
class ConstantLearner : public Learner {
 public:
  std::string name() const override { return "constant"; }
  Classifier fit(const std::vector<LabeledSample>& train) override;
};

// Logistic-loss SGD on degree-d monomial features.
class SgdHalfspaceLearner : public Learner {
 public:
  SgdHalfspaceLearner(int d, int epochs, double rate, uint64_t seed);
  std::string name() const override { return "sgd"; }
  Classifier fit(const std::vector<LabeledSample>& train) override;

 private:
  int d_, epochs_;
  double rate_;
  uint64_t seed_;
};

double test_error(const Classifier& h, const std::vector<LabeledSample>& test);

// The learner factory receives the planted secret of the paired trial.
using LearnerFactory =
    std::function<std::unique_ptr<Learner>(const std::vector<double>& secret)>;

struct DistinguisherSpec {
  MassartConfig cfg;     // cfg.params.sigma is the LWE noise scale
  size_t trials = 50;    // paired alternative/null trials
  double train_fraction = 0.5;
  double tau = 0.0;      // decide "alternative" iff test error < tau
  uint64_t seed = 1;
};

struct AdvantageReport {
  std::string learner;
  size_t trials = 0;
  double p_alt = 0.0;
  double p_null = 0.0;
  double advantage = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_error_alt = 0.0;
  double mean_error_null = 0.0;
  size_t failures = 0;  // instance generation FAIL outcomes
  bool degenerate = false;
  bool underpowered = false;
};

AdvantageReport run_distinguisher(const DistinguisherSpec& spec,
                                  const LearnerFactory& factory);

}  // namespace massart

#endif  // MASSART_DISTINGUISH_HPP_
