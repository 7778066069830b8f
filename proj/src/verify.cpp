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

#include "massart/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "massart/stats.hpp"

namespace massart {

std::vector<double> project(const std::vector<std::vector<double>>& xs,
                            std::span<const double> s) {
  const double norm = std::sqrt(dot(s, s));
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(dot(x, s) / norm);
  return out;
}

std::vector<double> project(const std::vector<LabeledSample>& samples,
                            std::span<const double> s) {
  const double norm = std::sqrt(dot(s, s));
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& x : samples) out.push_back(dot(x.x, s) / norm);
  return out;
}

std::vector<std::vector<double>> orthogonal_basis(std::span<const double> s) {
  const size_t n = s.size();
  const double norm = std::sqrt(dot(s, s));
  std::vector<double> v(s.begin(), s.end());
  for (double& c : v) c /= norm;
  v[0] -= 1.0;
  const double vv = dot(v, v);
  std::vector<std::vector<double>> basis;
  for (size_t j = 1; j < n; ++j) {
    std::vector<double> col(n, 0.0);
    col[j] = 1.0;
    if (vv > 1e-300)
      for (size_t i = 0; i < n; ++i) col[i] -= 2.0 * v[i] * v[j] / vv;
    basis.push_back(std::move(col));
  }
  return basis;
}

TestReport hidden_direction_test(std::span<const double> projections,
                                 const DensityOracle1D& oracle,
                                 const std::vector<double>& edges,
                                 double tol_l1) {
  TestReport r;
  r.test = "hidden_direction";
  r.n = projections.size();
  auto counts = histogram(projections, edges);
  for (double& c : counts) c /= static_cast<double>(r.n);
  const auto expect = oracle.bin_probabilities(edges);
  r.statistic = l1_distance(counts, expect);
  r.threshold = tol_l1;
  r.pass = r.statistic <= tol_l1;
  r.params["bins"] = static_cast<double>(edges.size() - 1);
  r.description = "L1 between binned hidden-direction projections and oracle";
  // Mean L1 of a multinomial histogram around its own cell probabilities.
  double noise = 0.0;
  for (double p : expect)
    noise += std::sqrt(2.0 * p * (1.0 - p) / (std::numbers::pi * static_cast<double>(r.n)));
  r.params["sampling_noise_l1"] = noise;
  if (r.n < 20 * (edges.size() - 1))
    r.warnings.push_back("underpowered: fewer than 20 samples per bin");
  else if (noise > tol_l1 / 2)
    r.warnings.push_back("underpowered: sampling noise alone exceeds half the tolerance");
  return r;
}

TestReport orthogonal_gaussianity_test(
    const std::vector<std::vector<double>>& xs, std::span<const double> s,
    double alpha) {
  TestReport r;
  r.test = "orthogonal_gaussianity";
  r.n = xs.size();
  r.threshold = alpha;
  const size_t n = s.size();
  if (n < 2) {
    r.pass = true;
    r.statistic = 1.0;
    r.description = "no orthogonal complement in one dimension";
    return r;
  }
  const auto basis = orthogonal_basis(s);
  const auto proj = project(xs, s);
  std::vector<double> sorted = proj;
  std::sort(sorted.begin(), sorted.end());
  const double q1 = sorted[sorted.size() / 4], q2 = sorted[sorted.size() / 2],
               q3 = sorted[3 * sorted.size() / 4];
  auto quartile = [&](double v) {
    return v < q1 ? 0 : v < q2 ? 1 : v < q3 ? 2 : 3;
  };
  auto cdf = [](double v) { return gaussian_cdf(v, 1.0); };
  const size_t tests = 5 * (n - 1);
  double pmin = 1.0;
  for (const auto& b : basis) {
    std::vector<double> all;
    std::vector<double> groups[4];
    all.reserve(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
      const double c = dot(xs[i], b);
      all.push_back(c);
      groups[quartile(proj[i])].push_back(c);
    }
    pmin = std::min(pmin, ks_one_sample(std::move(all), cdf).p);
    for (auto& g : groups) pmin = std::min(pmin, ks_one_sample(g, cdf).p);
  }
  r.statistic = pmin;
  r.pass = pmin > alpha / static_cast<double>(tests);
  r.params["tests"] = static_cast<double>(tests);
  r.description = "min KS p-value over orthogonal coordinates and quartiles";
  return r;
}

TestReport coordinate_gaussianity_test(
    const std::vector<std::vector<double>>& xs, double alpha) {
  TestReport r;
  r.test = "coordinate_gaussianity";
  r.n = xs.size();
  r.threshold = alpha;
  const size_t n = xs.empty() ? 0 : xs.front().size();
  double pmin = 1.0;
  for (size_t j = 0; j < n; ++j) {
    std::vector<double> col;
    col.reserve(xs.size());
    for (const auto& x : xs) col.push_back(x[j]);
    pmin = std::min(
        pmin, ks_one_sample(std::move(col), [](double v) {
          return gaussian_cdf(v, 1.0);
        }).p);
  }
  r.statistic = pmin;
  r.pass = pmin > alpha / static_cast<double>(std::max<size_t>(n, 1));
  r.params["tests"] = static_cast<double>(n);
  r.description = "min per-coordinate KS p-value vs unit-scale Gaussian";
  return r;
}

MassartEstimate massart_condition_estimate(
    const std::vector<LabeledSample>& samples, std::span<const double> s,
    const std::vector<double>& edges, double eta, double threshold_mult,
    size_t min_count) {
  const auto proj = project(samples, s);
  const size_t bins = edges.size() - 1;
  std::vector<MassartBin> all(bins);
  for (size_t b = 0; b < bins; ++b) all[b].range = {edges[b], edges[b + 1]};
  for (size_t i = 0; i < proj.size(); ++i) {
    size_t b = static_cast<size_t>(
        std::upper_bound(edges.begin(), edges.end(), proj[i]) - edges.begin());
    b = b == 0 ? 0 : std::min(b - 1, bins - 1);
    (samples[i].y > 0 ? all[b].plus : all[b].minus) += 1;
  }
  MassartEstimate est;
  est.total = samples.size();
  for (auto& b : all) {
    const size_t c = b.plus + b.minus;
    if (c < min_count) continue;
    b.eta_hat = static_cast<double>(std::min(b.plus, b.minus)) /
                static_cast<double>(c);
    if (b.eta_hat > threshold_mult * eta)
      est.violating_mass += static_cast<double>(c) / est.total;
    est.max_plus_deviation =
        std::max(est.max_plus_deviation,
                 std::abs(static_cast<double>(b.plus) / c - (1.0 - eta)));
    est.bins.push_back(b);
  }
  return est;
}

std::vector<double> region_aligned_edges(const PtfRegion& region, double lo,
                                         double hi, double max_width) {
  std::vector<double> cuts{lo, hi};
  for (const auto& iv : region.plus_set().intervals()) {
    if (iv.lo > lo && iv.lo < hi) cuts.push_back(iv.lo);
    if (iv.hi > lo && iv.hi < hi) cuts.push_back(iv.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> edges{cuts.front()};
  for (size_t i = 1; i < cuts.size(); ++i) {
    const double a = edges.back(), b = cuts[i];
    if (!(b > a)) continue;
    const auto pieces =
        static_cast<size_t>(std::max(1.0, std::ceil((b - a) / max_width)));
    for (size_t k = 1; k < pieces; ++k)
      edges.push_back(a + (b - a) * static_cast<double>(k) /
                              static_cast<double>(pieces));
    edges.push_back(b);
  }
  return edges;
}

std::vector<double> quantile_edges(std::vector<double> values, size_t bins) {
  std::sort(values.begin(), values.end());
  std::vector<double> edges{values.front()};
  for (size_t b = 1; b < bins; ++b) {
    const double v = values[b * values.size() / bins];
    if (v > edges.back()) edges.push_back(v);
  }
  edges.push_back(std::nextafter(values.back(),
                                 std::numeric_limits<double>::infinity()));
  return edges;
}

double ptf_error_estimate(const std::vector<LabeledSample>& samples,
                          std::span<const double> s, double t, double eps,
                          double c_prime) {
  const PtfRegion region(t, eps, c_prime);
  const auto proj = project(samples, s);
  size_t wrong = 0;
  for (size_t i = 0; i < proj.size(); ++i)
    if (region(proj[i]) != samples[i].y) ++wrong;
  return samples.empty() ? 0.0
                         : static_cast<double>(wrong) /
                               static_cast<double>(samples.size());
}

TestReport acceptance_rate_test(const ReductionParams& p, size_t n_trials,
                                uint64_t seed) {
  const RejectionSampler rs(p);
  const auto prob = acceptance_probability(p);
  Rng rng(seed);
  size_t acc = 0;
  for (size_t i = 0; i < n_trials; ++i)
    if (rs.accept_step(uniform01(rng), rng)) ++acc;
  const double n = static_cast<double>(n_trials);
  const double sd = std::sqrt(n * prob.exact * (1.0 - prob.exact));
  TestReport r;
  r.test = "acceptance_rate";
  r.n = n_trials;
  r.seed = seed;
  r.statistic = (static_cast<double>(acc) - n * prob.exact) / sd;
  r.threshold = 3.0;
  const double rate = static_cast<double>(acc) / n;
  r.pass = std::abs(r.statistic) <= 3.0 && rate >= prob.lower_bound;
  r.params["empirical"] = rate;
  r.params["exact"] = prob.exact;
  r.params["lower_bound"] = prob.lower_bound;
  r.description = "binomial z-score of accepted count against exact rate";
  return r;
}

std::vector<double> hidden_edges(double half_width, size_t bins) {
  return linear_edges(-half_width, half_width, bins);
}

}  // namespace massart
