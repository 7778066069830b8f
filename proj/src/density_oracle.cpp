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

#include "massart/density_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "massart/common.hpp"
#include "massart/lattice_gaussian.hpp"
#include "massart/stats.hpp"

namespace massart {

size_t Grid::cells() const {
  return static_cast<size_t>(std::llround((hi - lo) / step));
}

DensityOracle1D::DensityOracle1D(const std::function<double(double)>& pdf,
                                 Grid grid, std::vector<Atom> atoms)
    : grid_(grid), atoms_(std::move(atoms)) {
  if (!(grid.step > 0.0) || !(grid.hi > grid.lo))
    throw ConfigError("invalid oracle grid");
  values_.resize(grid_.cells());
  for (size_t i = 0; i < values_.size(); ++i) {
    const double v = pdf(grid_.center(i));
    if (!(v >= 0.0)) throw InvalidInput("density must be nonnegative");
    values_[i] = v;
  }
  normalize();
}

DensityOracle1D::DensityOracle1D(Grid grid, std::vector<double> cell_values,
                                 std::vector<Atom> atoms)
    : grid_(grid), values_(std::move(cell_values)), atoms_(std::move(atoms)) {
  if (values_.size() != grid_.cells()) throw ConfigError("grid/table mismatch");
  normalize();
}

void DensityOracle1D::normalize() {
  double mass = 0.0;
  for (double v : values_) mass += v * grid_.step;
  for (const auto& a : atoms_) mass += a.mass;
  if (!(mass > 0.0)) throw ConfigError("density has no mass on its grid");
  norm_ = mass;
  for (double& v : values_) v /= mass;
  for (auto& a : atoms_) a.mass /= mass;
}

double DensityOracle1D::pdf(double u) const {
  if (u < grid_.lo || u >= grid_.hi) return 0.0;
  const auto i = static_cast<size_t>((u - grid_.lo) / grid_.step);
  return i < values_.size() ? values_[i] : 0.0;
}

double DensityOracle1D::total_mass() const {
  double mass = 0.0;
  for (double v : values_) mass += v * grid_.step;
  for (const auto& a : atoms_) mass += a.mass;
  return mass;
}

std::vector<double> DensityOracle1D::bin_probabilities(
    const std::vector<double>& edges) const {
  const size_t bins = edges.size() - 1;
  std::vector<double> p(bins, 0.0);
  auto bin_of = [&](double v) {
    size_t b = static_cast<size_t>(
        std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
    return b == 0 ? size_t{0} : std::min(b - 1, bins - 1);
  };
  for (size_t i = 0; i < values_.size(); ++i) {
    const double a = grid_.lo + static_cast<double>(i) * grid_.step;
    const double b = a + grid_.step;
    size_t ba = bin_of(a);
    const size_t bb = bin_of(b);
    if (ba == bb) {
      p[ba] += values_[i] * grid_.step;
      continue;
    }
    // Cell straddles one or more edges; split by overlap.
    double cur = a;
    for (; ba < bb; ++ba) {
      p[ba] += values_[i] * (edges[ba + 1] - cur);
      cur = edges[ba + 1];
    }
    p[bb] += values_[i] * (b - cur);
  }
  for (const auto& at : atoms_) p[bin_of(at.at)] += at.mass;
  return p;
}

DensityOracle1D convolve_with_gaussian(const DensityOracle1D& oracle,
                                       double sigma_noise) {
  const Grid& g = oracle.grid();
  if (!(sigma_noise > 0.0)) throw InvalidInput("sigma_noise must be positive");
  if (g.step > sigma_noise / 8.0)
    throw ConfigError("grid step must be at most sigma_noise/8");
  const double sd = sigma_noise / std::sqrt(2.0 * kPi);
  const long P = static_cast<long>(std::ceil(8.0 * sd / g.step));
  Grid ng{g.lo - static_cast<double>(P) * g.step,
          g.hi + static_cast<double>(P) * g.step, g.step};
  std::vector<double> kernel(static_cast<size_t>(2 * P + 1));
  for (long j = -P; j <= P; ++j)
    kernel[static_cast<size_t>(j + P)] =
        gaussian_cdf((j + 0.5) * g.step, sigma_noise) -
        gaussian_cdf((j - 0.5) * g.step, sigma_noise);
  const auto& src = oracle.cell_values();
  std::vector<double> out(ng.cells(), 0.0);
  for (size_t i = 0; i < src.size(); ++i) {
    if (src[i] == 0.0) continue;
    for (size_t j = 0; j < kernel.size(); ++j) out[i + j] += src[i] * kernel[j];
  }
  for (const auto& a : oracle.atoms()) {
    const long c = static_cast<long>(std::floor((a.at - ng.lo) / ng.step));
    for (long i = std::max(0L, c - P - 1);
         i <= std::min(static_cast<long>(out.size()) - 1, c + P + 1); ++i) {
      const double lo = ng.lo + static_cast<double>(i) * ng.step;
      out[static_cast<size_t>(i)] +=
          a.mass *
          (gaussian_cdf(lo + ng.step - a.at, sigma_noise) -
           gaussian_cdf(lo - a.at, sigma_noise)) /
          ng.step;
    }
  }
  return DensityOracle1D(ng, std::move(out));
}

DPrimeModel::DPrimeModel(double t, double eps, double psi, IntervalSet B,
                         double sigma_signal, KDensity kd)
    : t_(t), eps_(eps), psi_(psi), B_(std::move(B)), sigma_(sigma_signal),
      kd_(kd) {
  if (B_.empty()) throw InvalidInput("B must be nonempty");
  if (kd_ == KDensity::Uniform) {
    k_norm_ = B_.measure();
  } else {
    k_norm_ = 0.0;
    auto f = [&](double k) {
      const double T = t_ + k - psi_;
      return (t_ - psi_) * t_ * t_ / (T * T * T * T);
    };
    for (const auto& iv : B_.intervals())
      k_norm_ += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, iv.lo, iv.hi, 5, 1e-14);
  }
}

double DPrimeModel::k_density(double k) const {
  if (kd_ == KDensity::Uniform) return 1.0 / k_norm_;
  const double T = t_ + k - psi_;
  return (t_ - psi_) * t_ * t_ / (T * T * T * T) / k_norm_;
}

double DPrimeModel::weight(double k) const {
  return k_density(k) / lattice_rho_sum(k, t_ + k - psi_, sigma_);
}

double DPrimeModel::continuous(double u) const {
  // Location u comes from index i with k = (u - (t - psi) i) / (i + 1).
  const double kl = B_.lower(), kh = B_.upper();
  const double i1 = (u - kl) / (t_ + kl - psi_);
  const double i2 = (u - kh) / (t_ + kh - psi_);
  const long lo = static_cast<long>(std::floor(std::min(i1, i2))) - 1;
  const long hi = static_cast<long>(std::ceil(std::max(i1, i2))) + 1;
  double s = 0.0;
  for (long i = lo; i <= hi; ++i) {
    if (i == -1) continue;
    const double f = static_cast<double>(i + 1);
    const double k = (u - (t_ - psi_) * static_cast<double>(i)) / f;
    if (B_.contains(k)) s += weight(k) / std::abs(f);
  }
  return s == 0.0 ? 0.0 : s * rho_weight(u, sigma_);
}

Atom DPrimeModel::atom() const {
  double m = 0.0;
  auto f = [&](double k) { return weight(k); };
  for (const auto& iv : B_.intervals())
    m += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, iv.lo, iv.hi, 5, 1e-14);
  return {psi_ - t_, m * rho_weight(psi_ - t_, sigma_)};
}

DensityOracle1D DPrimeModel::oracle(Grid grid) const {
  return DensityOracle1D([this](double u) { return continuous(u); }, grid,
                         {atom()});
}

double dprime_pdf(double u, double t, double eps, double psi,
                  const IntervalSet& B, double sigma_signal) {
  return DPrimeModel(t, eps, psi, B, sigma_signal, KDensity::Uniform)
      .continuous(u);
}

}  // namespace massart
