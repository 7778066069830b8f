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

#include "massart/lattice_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace massart {
namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InvalidInput("sigma must be positive and finite");
}

void check_trunc(const TruncationPolicy& trunc) {
  if (!(trunc.radius_multiplier >= 8.0))
    throw InvalidInput("truncation radius multiplier must be >= 8");
}

struct Window {
  long lo, hi;      // index range of lattice points y + j*T
  double d0sq;      // squared distance of the closest point to the origin
};

Window window_for(const ShiftedLattice1D& lat, double sigma,
                  const TruncationPolicy& trunc) {
  const double T = lat.spacing, y = lat.offset;
  const double R = std::max(trunc.radius_multiplier * sigma, T);
  Window w;
  w.lo = static_cast<long>(std::ceil((-R - y) / T));
  w.hi = static_cast<long>(std::floor((R - y) / T));
  const double jm = std::round(-y / T);
  const double d0 = y + jm * T;
  w.d0sq = d0 * d0;
  if (w.hi < w.lo) throw std::logic_error("empty truncation window");
  return w;
}

}  // namespace

double rho_weight(double x, double sigma) {
  check_sigma(sigma);
  if (!std::isfinite(x)) throw InvalidInput("non-finite input to rho_weight");
  return std::exp(-kPi * x * x / (sigma * sigma)) / sigma;
}

double rho_weight(std::span<const double> x, double sigma) {
  check_sigma(sigma);
  double sq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidInput("non-finite input to rho_weight");
    sq += v * v;
  }
  return std::exp(-kPi * sq / (sigma * sigma) -
                  static_cast<double>(x.size()) * std::log(sigma));
}

double lattice_rho_sum(double shift, double spacing, double sigma) {
  check_sigma(sigma);
  if (!(spacing > 0.0)) throw InvalidInput("spacing must be positive");
  const double T = spacing;
  if (sigma <= T) {
    const double a = shift - T * std::round(shift / T);
    double s = 0.0;
    for (long j = 0;; ++j) {
      double t1 = std::exp(-kPi * std::pow(a + j * T, 2) / (sigma * sigma));
      double t2 = j == 0 ? 0.0
                         : std::exp(-kPi * std::pow(a - j * T, 2) /
                                    (sigma * sigma));
      s += t1 + t2;
      if (j > 0 && t1 + t2 < 1e-18 * s) break;
    }
    return s / sigma;
  }
  double s = 1.0;
  for (long l = 1;; ++l) {
    double term = std::exp(-kPi * std::pow(sigma * l / T, 2));
    s += 2.0 * term * std::cos(2.0 * kPi * l * shift / T);
    if (term < 1e-18) break;
  }
  return s / T;
}

double tail_mass_bound(double spacing, double sigma,
                       const TruncationPolicy& trunc) {
  check_sigma(sigma);
  check_trunc(trunc);
  const double T = spacing;
  const double R = std::max(trunc.radius_multiplier * sigma, T);
  const double s2 = sigma * sigma;
  // Points beyond R on each side, relative to the closest point (|d0| <= T/2).
  return 2.0 * std::exp(-kPi * (R * R - T * T / 4.0) / s2) /
         (1.0 - std::exp(-2.0 * kPi * R * T / s2));
}

LatticeWindow discrete_gaussian_window(const ShiftedLattice1D& lat,
                                       double sigma,
                                       const TruncationPolicy& trunc) {
  check_sigma(sigma);
  check_trunc(trunc);
  if (!(lat.spacing > 0.0)) throw InvalidInput("spacing must be positive");
  const Window w = window_for(lat, sigma, trunc);
  LatticeWindow out;
  double total = 0.0;
  for (long j = w.lo; j <= w.hi; ++j) {
    const double p = lat.offset + static_cast<double>(j) * lat.spacing;
    const double wt = std::exp(-kPi * (p * p - w.d0sq) / (sigma * sigma));
    out.points.push_back(p);
    out.probs.push_back(wt);
    total += wt;
  }
  for (double& p : out.probs) p /= total;
  return out;
}

double sample_discrete_gaussian_1d(const ShiftedLattice1D& lat, double sigma,
                                   Rng& rng, const TruncationPolicy& trunc) {
  check_sigma(sigma);
  check_trunc(trunc);
  if (!(lat.spacing > 0.0)) throw InvalidInput("spacing must be positive");
  const Window w = window_for(lat, sigma, trunc);
  thread_local std::vector<double> table;
  const size_t count = static_cast<size_t>(w.hi - w.lo + 1);
  table.resize(count);
  const double inv = kPi / (sigma * sigma);
  double total = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const double p =
        lat.offset + static_cast<double>(w.lo + static_cast<long>(i)) *
                         lat.spacing;
    total += std::exp(-(p * p - w.d0sq) * inv);
    table[i] = total;
  }
  const double u = uniform01(rng) * total;
  const size_t idx = static_cast<size_t>(
      std::upper_bound(table.begin(), table.end(), u) - table.begin());
  const long j = w.lo + static_cast<long>(std::min(idx, count - 1));
  return lat.offset + static_cast<double>(j) * lat.spacing;
}

void sample_shifted_lattice_gaussian_nd(std::span<const double> shift,
                                        double sigma, Rng& rng,
                                        std::span<double> out,
                                        const TruncationPolicy& trunc) {
  for (size_t i = 0; i < shift.size(); ++i)
    out[i] = sample_discrete_gaussian_1d({1.0, shift[i]}, sigma, rng, trunc);
}

std::vector<double> sample_shifted_lattice_gaussian_nd(
    std::span<const double> shift, double sigma, Rng& rng,
    const TruncationPolicy& trunc) {
  std::vector<double> out(shift.size());
  sample_shifted_lattice_gaussian_nd(shift, sigma, rng, out, trunc);
  return out;
}

std::vector<double> sample_expanded(int n, double sigma, Rng& rng,
                                    const TruncationPolicy& trunc) {
  std::vector<double> x(static_cast<size_t>(n));
  for (double& v : x) v = uniform01(rng);
  return sample_shifted_lattice_gaussian_nd(x, sigma, rng, trunc);
}

std::vector<double> sample_collapsed(int n, double sigma, Rng& rng) {
  check_sigma(sigma);
  std::vector<double> x(static_cast<size_t>(n));
  for (double& v : x) v = mod1(gaussian(rng, sigma));
  return x;
}

double smoothing_threshold(int n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0,1)");
  if (n < 1) throw InvalidInput("dimension must be positive");
  return std::sqrt(std::log(2.0 * n * (1.0 + 1.0 / eps)) / kPi);
}

double collapsed_density(std::span<const double> u, double sigma,
                         const TruncationPolicy& trunc) {
  check_sigma(sigma);
  check_trunc(trunc);
  const double R = trunc.radius_multiplier * sigma + 1.0;
  double prod = 1.0;
  for (double ui : u) {
    if (!(ui >= 0.0 && ui < 1.0)) throw InvalidInput("u must lie in [0,1)^n");
    double s = 0.0;
    const long lo = static_cast<long>(std::floor(-ui - R));
    const long hi = static_cast<long>(std::ceil(-ui + R));
    for (long k = lo; k <= hi; ++k) {
      const double v = ui + static_cast<double>(k);
      s += std::exp(-kPi * v * v / (sigma * sigma));
    }
    prod *= s / sigma;
  }
  return prod;
}

}  // namespace massart
