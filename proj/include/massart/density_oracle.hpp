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

#ifndef MASSART_DENSITY_ORACLE_HPP_
#define MASSART_DENSITY_ORACLE_HPP_

#include <functional>
#include <vector>

#include "massart/interval_set.hpp"

namespace massart {

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  size_t cells() const;
  double center(size_t i) const { return lo + (static_cast<double>(i) + 0.5) * step; }
};

struct Atom {
  double at;
  double mass;
};

// One-dimensional density: a continuous part tabulated at cell centers of a
// grid plus optional point masses. Everything is normalized to total mass 1.
class DensityOracle1D {
 public:
  DensityOracle1D(const std::function<double(double)>& pdf, Grid grid,
                  std::vector<Atom> atoms = {});
  DensityOracle1D(Grid grid, std::vector<double> cell_values,
                  std::vector<Atom> atoms = {});

  const Grid& grid() const { return grid_; }
  const std::vector<double>& cell_values() const { return values_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double normalization() const { return norm_; }

  // Normalized continuous density (piecewise constant per cell).
  double pdf(double u) const;
  double total_mass() const;
  // Probability of each bin; mass below/above the edges joins the end bins.
  std::vector<double> bin_probabilities(const std::vector<double>& edges) const;

 private:
  void normalize();
  Grid grid_;
  std::vector<double> values_;
  std::vector<Atom> atoms_;
  double norm_ = 1.0;
};

// Convolution with the Gaussian of scale sigma_noise; atoms become Gaussian
// bumps. The grid is widened by eight standard deviations on each side.
DensityOracle1D convolve_with_gaussian(const DensityOracle1D& oracle,
                                       double sigma_noise);

// How the offset k is distributed over B in the mixture.
enum class KDensity {
  Uniform,  // k uniform on B
  Induced,  // density of k among accepted rejection samples
};

// Mixture over k in B of discrete Gaussians on k + (t + k - psi) Z with scale
// sigma_signal, each normalized exactly. The shared lattice point psi - t
// (index -1) is a point mass; everything else has a density.
class DPrimeModel {
 public:
  DPrimeModel(double t, double eps, double psi, IntervalSet B,
              double sigma_signal, KDensity kd);

  double continuous(double u) const;
  Atom atom() const;
  DensityOracle1D oracle(Grid grid) const;

 private:
  double k_density(double k) const;
  double weight(double k) const;
  double t_, eps_, psi_;
  IntervalSet B_;
  double sigma_;
  KDensity kd_;
  double k_norm_;
};

// Unnormalized continuous part with k uniform on B, index -1 skipped.
double dprime_pdf(double u, double t, double eps, double psi,
                  const IntervalSet& B, double sigma_signal);

}  // namespace massart

#endif  // MASSART_DENSITY_ORACLE_HPP_
