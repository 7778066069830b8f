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

#ifndef MASSART_VERIFY_HPP_
#define MASSART_VERIFY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "massart/density_oracle.hpp"
#include "massart/instance_builder.hpp"
#include "massart/interval_set.hpp"
#include "massart/rejection.hpp"

namespace massart {

struct TestReport {
  std::string test;
  double statistic = 0.0;
  double threshold = 0.0;  // tolerance, or significance level for p-values
  bool pass = false;
  size_t n = 0;
  uint64_t seed = 0;
  std::string description;
  std::map<std::string, double> params;
  std::vector<std::string> warnings;
};

// <x, s> / |s| for each row.
std::vector<double> project(const std::vector<std::vector<double>>& xs,
                            std::span<const double> s);
std::vector<double> project(const std::vector<LabeledSample>& samples,
                            std::span<const double> s);

// Orthonormal basis of the complement of s (n - 1 vectors), via a
// Householder reflection taking s/|s| to the first basis vector.
std::vector<std::vector<double>> orthogonal_basis(std::span<const double> s);

// L1 distance between the binned projections and the oracle's bin masses.
TestReport hidden_direction_test(std::span<const double> projections,
                                 const DensityOracle1D& oracle,
                                 const std::vector<double>& edges,
                                 double tol_l1);

// KS of each orthogonal coordinate against the unit-scale Gaussian, and of
// each coordinate within each quartile of the hidden projection.
// Bonferroni across all of them at level alpha.
TestReport orthogonal_gaussianity_test(
    const std::vector<std::vector<double>>& xs, std::span<const double> s,
    double alpha = 0.01);

// Per-coordinate KS against the unit-scale Gaussian, Bonferroni at alpha.
TestReport coordinate_gaussianity_test(
    const std::vector<std::vector<double>>& xs, double alpha = 0.01);

struct MassartBin {
  Interval range;
  size_t plus = 0;
  size_t minus = 0;
  double eta_hat = 0.0;
};

struct MassartEstimate {
  std::vector<MassartBin> bins;  // only bins with at least min_count samples
  double violating_mass = 0.0;
  double max_plus_deviation = 0.0;  // max |Pr[y=+1] - (1 - eta)|
  size_t total = 0;
};

MassartEstimate massart_condition_estimate(
    const std::vector<LabeledSample>& samples, std::span<const double> s,
    const std::vector<double>& edges, double eta, double threshold_mult,
    size_t min_count = 50);

// Edges that follow the +1 region's boundaries inside [lo, hi], with long
// pieces split to at most max_width. Outermost edges are lo and hi.
std::vector<double> region_aligned_edges(const PtfRegion& region, double lo,
                                         double hi, double max_width);

// Edges at empirical quantiles so each bin holds about the same count.
std::vector<double> quantile_edges(std::vector<double> values, size_t bins);

double ptf_error_estimate(const std::vector<LabeledSample>& samples,
                          std::span<const double> s, double t, double eps,
                          double c_prime);

// Empirical acceptance of steps 1-2 on uniform y versus the exact rate.
TestReport acceptance_rate_test(const ReductionParams& p, size_t n_trials,
                                uint64_t seed);

// Histogram bins for the hidden projection of a rejection run: a window of
// +-half_width around 0 with the tails in the end bins.
std::vector<double> hidden_edges(double half_width, size_t bins);

}  // namespace massart

#endif  // MASSART_VERIFY_HPP_
