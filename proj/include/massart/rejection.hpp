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

#ifndef MASSART_REJECTION_HPP_
#define MASSART_REJECTION_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "massart/common.hpp"
#include "massart/interval_set.hpp"
#include "massart/lattice_gaussian.hpp"

namespace massart {

enum class ValidationMode { Strict, DeskScale };

std::string to_string(ValidationMode m);
ValidationMode parse_mode(const std::string& s);

// Universal constants of the parameter conditions; their true values are
// unknown, so they are configuration.
struct ConditionConstants {
  double c = 1.0;
  double c_prime = 0.02;
  double c_dprime = 1.0;
  double min_ratio = 4.0;  // smallest acceptable t/eps
};

struct ReductionParams {
  int n = 1;
  double t = 0.0;
  double eps = 0.0;
  double psi = 0.0;
  IntervalSet B;
  double delta = 0.01;
  double sigma = 0.0;  // scale of the incoming LWE noise
  ValidationMode mode = ValidationMode::DeskScale;
  ConditionConstants consts;
  size_t m_prime = 1;
};

struct ClauseResult {
  std::string name;
  bool satisfied = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ClauseResult> clauses;
  double sr = 0.0;
  bool pass = false;  // Strict: all clauses hold. DeskScale: always true.
  std::vector<std::string> warnings;
};

// Hard errors (thrown in both modes): psi + eps > t, B outside
// [psi, psi + eps], empty B (InvalidInput); signal ratio below 1/2
// (Infeasible).
ValidationReport validate_condition(const ReductionParams& p);

double signal_ratio(double t, double eps, double sigma);

// k with y = k / (t + k - psi).
double invert_y(double y, double t, double psi);

struct DerivedScales {
  double sr;
  double sigma_scale;
  double sigma_add;
  double sigma_signal;
  double sigma_noise;
  double k;
};

DerivedScales derived_scales(double k, const ReductionParams& p);

// Single-sample rejection step. Steps are exposed separately so the
// acceptance rate can be measured without drawing outputs.
class RejectionSampler {
 public:
  explicit RejectionSampler(ReductionParams p,
                            TruncationPolicy trunc = TruncationPolicy{});

  const ReductionParams& params() const { return p_; }
  const ValidationReport& report() const { return report_; }

  // Returns the recovered offset k when steps 1 and 2 both keep the sample.
  std::optional<double> accept_step(double y, Rng& rng) const;
  // Writes x' (length n) for an accepted k.
  void output_step(std::span<const double> x, double k, Rng& rng,
                   std::span<double> out) const;
  std::optional<std::vector<double>> operator()(std::span<const double> x,
                                                double y, Rng& rng) const;

 private:
  ReductionParams p_;
  TruncationPolicy trunc_;
  ValidationReport report_;
};

std::optional<std::vector<double>> reject_sample(std::span<const double> x,
                                                 double y,
                                                 const ReductionParams& p,
                                                 Rng& rng);

struct AcceptanceProbability {
  double lower_bound;
  double exact;
};

AcceptanceProbability acceptance_probability(const ReductionParams& p);

// Normalized density of the recovered k among accepted samples,
// proportional to (t - psi) t^2 / (t + k - psi)^4 on B.
double accepted_k_density(double k, const ReductionParams& p);

}  // namespace massart

#endif  // MASSART_REJECTION_HPP_
