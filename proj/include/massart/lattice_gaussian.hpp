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

#ifndef MASSART_LATTICE_GAUSSIAN_HPP_
#define MASSART_LATTICE_GAUSSIAN_HPP_

#include <span>
#include <vector>

#include "massart/common.hpp"

// Gaussian family with weight rho_sigma(x) = sigma^-n exp(-pi |x|^2 / sigma^2).
// Per-coordinate variance is sigma^2 / (2 pi), not sigma^2.
namespace massart {

// Support T*Z + y.
struct ShiftedLattice1D {
  double spacing = 1.0;
  double offset = 0.0;
};

// Lattice points within radius_multiplier * sigma of the mode are kept.
// The window always reaches at least one spacing so it is never empty.
struct TruncationPolicy {
  double radius_multiplier = 12.0;
};

double rho_weight(double x, double sigma);
double rho_weight(std::span<const double> x, double sigma);

// Sum over j of rho_sigma(shift + j * spacing), one dimension.
// Uses the direct sum for narrow Gaussians and the Poisson-dual sum otherwise.
double lattice_rho_sum(double shift, double spacing, double sigma);

// Upper bound on the relative weight the truncation discards.
double tail_mass_bound(double spacing, double sigma,
                       const TruncationPolicy& trunc = {});

// Normalized truncated pmf, points in increasing order.
struct LatticeWindow {
  std::vector<double> points;
  std::vector<double> probs;
};
LatticeWindow discrete_gaussian_window(const ShiftedLattice1D& lat,
                                       double sigma,
                                       const TruncationPolicy& trunc = {});

double sample_discrete_gaussian_1d(const ShiftedLattice1D& lat, double sigma,
                                   Rng& rng,
                                   const TruncationPolicy& trunc = {});

// Draw from the discrete Gaussian on Z^n + shift, coordinatewise.
void sample_shifted_lattice_gaussian_nd(std::span<const double> shift,
                                        double sigma, Rng& rng,
                                        std::span<double> out,
                                        const TruncationPolicy& trunc = {});
std::vector<double> sample_shifted_lattice_gaussian_nd(
    std::span<const double> shift, double sigma, Rng& rng,
    const TruncationPolicy& trunc = {});

// x ~ U[0,1)^n, then the discrete Gaussian on Z^n + x.
std::vector<double> sample_expanded(int n, double sigma, Rng& rng,
                                    const TruncationPolicy& trunc = {});

// mod 1 of a continuous Gaussian draw.
std::vector<double> sample_collapsed(int n, double sigma, Rng& rng);

// Bound on the smoothing parameter of Z^n: sqrt(ln(2n(1+1/eps))/pi).
double smoothing_threshold(int n, double eps);

// Density of the collapsed Gaussian at u in [0,1)^n.
double collapsed_density(std::span<const double> u, double sigma,
                         const TruncationPolicy& trunc = {});

}  // namespace massart

#endif  // MASSART_LATTICE_GAUSSIAN_HPP_
