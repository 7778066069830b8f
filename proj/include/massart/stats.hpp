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

#ifndef MASSART_STATS_HPP_
#define MASSART_STATS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace massart {

struct KsResult {
  double d = 0.0;
  double p = 1.0;
};

// Asymptotic Kolmogorov tail with Stephens' small-sample correction.
double kolmogorov_pvalue(double d, double n_eff);

KsResult ks_one_sample(std::vector<double> data,
                       const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// CDF of the centered Gaussian with scale sigma (sd sigma / sqrt(2 pi)).
double gaussian_cdf(double x, double sigma = 1.0);

// Equal-width edges over [lo, hi].
std::vector<double> linear_edges(double lo, double hi, size_t bins);

// Bin counts; values outside the edges land in the first or last bin.
std::vector<double> histogram(std::span<const double> values,
                              const std::vector<double>& edges);

double l1_distance(std::span<const double> p, std::span<const double> q);

}  // namespace massart

#endif  // MASSART_STATS_HPP_
