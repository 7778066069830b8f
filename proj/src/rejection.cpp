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

#include "massart/rejection.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace massart {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Unnormalized accepted-k weight: image density times keep probability.
double k_weight(double k, double t, double psi) {
  const double T = t + k - psi;
  return (t - psi) / (T * T) * (t * t) / (T * T);
}

double integrate_k_weight(const ReductionParams& p) {
  double total = 0.0;
  auto f = [&](double k) { return k_weight(k, p.t, p.psi); };
  for (const auto& iv : p.B.intervals())
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, iv.lo, iv.hi, 5, 1e-14);
  return total;
}

}  // namespace

std::string to_string(ValidationMode m) {
  return m == ValidationMode::Strict ? "strict" : "desk";
}

ValidationMode parse_mode(const std::string& s) {
  if (s == "strict") return ValidationMode::Strict;
  if (s == "desk" || s == "deskscale") return ValidationMode::DeskScale;
  throw InvalidInput("unknown validation mode: " + s);
}

double signal_ratio(double t, double eps, double sigma) {
  return 1.0 - 4.0 * (t + eps) * (t + eps) * sigma * sigma;
}

ValidationReport validate_condition(const ReductionParams& p) {
  if (p.n < 1) throw InvalidInput("n must be positive");
  if (!(p.t > 0.0) || !(p.eps > 0.0) || !(p.sigma > 0.0))
    throw InvalidInput("t, eps and sigma must be positive");
  if (!(p.delta > 0.0 && p.delta < 1.0))
    throw InvalidInput("delta must lie in (0,1)");
  if (!(p.psi >= 0.0 && p.psi < p.t)) throw InvalidInput("psi must lie in [0,t)");
  if (p.psi + p.eps > p.t * (1.0 + 1e-12))
    throw InvalidInput("psi + eps must not exceed t");
  if (p.B.empty() || !(p.B.measure() > 0.0))
    throw InvalidInput("B must have positive measure");
  if (!p.B.within(p.psi, p.psi + p.eps))
    throw InvalidInput("B must lie inside [psi, psi + eps]");

  ValidationReport r;
  r.sr = signal_ratio(p.t, p.eps, p.sigma);
  if (!(r.sr >= 0.5))
    throw Infeasible("signal ratio " + fmt(r.sr) +
                     " is below 1/2; (t+eps)*sigma must be at most 1/(2*sqrt(2))");

  const double ratio = p.t / p.eps;
  const double nearest_even = 2.0 * std::round(ratio / 2.0);
  const bool even = std::abs(ratio - nearest_even) <= 1e-9 * ratio;
  r.clauses.push_back({"(i) t/eps large even integer",
                       even && ratio >= p.consts.min_ratio,
                       "t/eps = " + fmt(ratio)});
  r.clauses.push_back({"(ii) sigma <= sqrt(n)", p.sigma <= std::sqrt(p.n),
                       "sigma = " + fmt(p.sigma)});
  const double lhs3 = 1.0 / (p.t * std::sqrt(p.n));
  const double rhs3 = std::sqrt(p.consts.c * std::log(p.n / p.delta));
  r.clauses.push_back({"(iii) 1/(t sqrt n) >= sqrt(c log(n/delta))",
                       lhs3 >= rhs3, fmt(lhs3) + " vs " + fmt(rhs3)});
  const double lhs4 = std::pow(
      p.consts.c_prime * p.eps / (p.consts.c_dprime * p.t * p.sigma), 2);
  const double rhs4 = std::log(static_cast<double>(p.m_prime) / p.delta);
  r.clauses.push_back({"(iv) (c' eps/(c'' t sigma))^2 >= log(m'/delta)",
                       lhs4 >= rhs4, fmt(lhs4) + " vs " + fmt(rhs4)});

  bool all = true;
  for (const auto& c : r.clauses) {
    if (!c.satisfied) {
      all = false;
      r.warnings.push_back("clause " + c.name + " violated: " + c.detail);
    }
  }
  r.pass = p.mode == ValidationMode::DeskScale ? true : all;
  return r;
}

double invert_y(double y, double t, double psi) {
  if (!(y >= 0.0 && y < 1.0)) throw InvalidInput("y must lie in [0,1)");
  return y * (t - psi) / (1.0 - y);
}

DerivedScales derived_scales(double k, const ReductionParams& p) {
  DerivedScales d;
  d.k = k;
  d.sr = signal_ratio(p.t, p.eps, p.sigma);
  d.sigma_scale = d.sr / ((p.t + k - p.psi) * std::sqrt(p.n));
  const double base = p.sigma / std::sqrt(p.n);
  const double rad =
      ((1.0 - d.sr) * d.sigma_scale * d.sigma_scale - d.sr * base * base) /
      d.sr;
  if (!(d.sr > 0.0) || rad < 0.0)
    throw Infeasible("negative radicand for the added-noise scale");
  d.sigma_add = std::sqrt(rad);
  d.sigma_signal = std::sqrt(d.sr);
  d.sigma_noise = std::sqrt(1.0 - d.sr);
  return d;
}

RejectionSampler::RejectionSampler(ReductionParams p, TruncationPolicy trunc)
    : p_(std::move(p)), trunc_(trunc), report_(validate_condition(p_)) {
  if (!report_.pass)
    throw ConfigError("strict validation failed: " + report_.warnings.front());
}

std::optional<double> RejectionSampler::accept_step(double y, Rng& rng) const {
  const double k = invert_y(y, p_.t, p_.psi);
  if (!p_.B.contains(k)) return std::nullopt;
  const double T = p_.t + k - p_.psi;
  const double keep = (p_.t * p_.t) / (T * T);
  if (uniform01(rng) >= keep) return std::nullopt;
  return k;
}

void RejectionSampler::output_step(std::span<const double> x, double k,
                                   Rng& rng, std::span<double> out) const {
  const DerivedScales d = derived_scales(k, p_);
  for (size_t i = 0; i < x.size(); ++i) {
    const double shift = mod1(x[i] + gaussian(rng, d.sigma_add));
    out[i] = sample_discrete_gaussian_1d({1.0, shift}, d.sigma_scale, rng,
                                         trunc_) /
             d.sigma_scale;
  }
}

std::optional<std::vector<double>> RejectionSampler::operator()(
    std::span<const double> x, double y, Rng& rng) const {
  const auto k = accept_step(y, rng);
  if (!k) return std::nullopt;
  std::vector<double> out(x.size());
  output_step(x, *k, rng, out);
  return out;
}

std::optional<std::vector<double>> reject_sample(std::span<const double> x,
                                                 double y,
                                                 const ReductionParams& p,
                                                 Rng& rng) {
  return RejectionSampler(p)(x, y, rng);
}

AcceptanceProbability acceptance_probability(const ReductionParams& p) {
  validate_condition(p);
  AcceptanceProbability a;
  const double top = p.t + p.eps;
  a.lower_bound = p.B.measure() * (p.t - p.psi) / (top * top) *
                  (p.t * p.t) / (top * top);
  a.exact = integrate_k_weight(p);
  return a;
}

double accepted_k_density(double k, const ReductionParams& p) {
  if (!p.B.contains(k)) return 0.0;
  return k_weight(k, p.t, p.psi) / integrate_k_weight(p);
}

}  // namespace massart
