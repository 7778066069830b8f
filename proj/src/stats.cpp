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

#include "massart/stats.hpp"

#include <algorithm>
#include <cmath>

#include "massart/common.hpp"

namespace massart {

double kolmogorov_pvalue(double d, double n_eff) {
  const double sn = std::sqrt(n_eff);
  const double lam = (sn + 0.12 + 0.11 / sn) * d;
  if (lam < 1e-3) return 1.0;
  double q;
  if (lam < 1.18) {
    // Jacobi-transformed series converges fast for small lambda.
    double s = 0.0;
    for (int k = 1; k <= 20; ++k)
      s += std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * kPi * kPi /
                    (8.0 * lam * lam));
    q = 1.0 - std::sqrt(2.0 * kPi) / lam * s;
  } else {
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lam * lam);
      s += (k % 2 ? 1.0 : -1.0) * term;
      if (term < 1e-18) break;
    }
    q = 2.0 * s;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> data,
                       const std::function<double(double)>& cdf) {
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    const double f = cdf(data[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_pvalue(d, n)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return {d, kolmogorov_pvalue(d, na * nb / (na + nb))};
}

double gaussian_cdf(double x, double sigma) {
  return 0.5 * std::erfc(-x * std::sqrt(kPi) / sigma);
}

std::vector<double> linear_edges(double lo, double hi, size_t bins) {
  std::vector<double> e(bins + 1);
  for (size_t i = 0; i <= bins; ++i)
    e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  return e;
}

std::vector<double> histogram(std::span<const double> values,
                              const std::vector<double>& edges) {
  const size_t bins = edges.size() - 1;
  std::vector<double> h(bins, 0.0);
  for (double v : values) {
    size_t b = static_cast<size_t>(
        std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
    b = b == 0 ? 0 : std::min(b - 1, bins - 1);
    h[b] += 1.0;
  }
  return h;
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s;
}

}  // namespace massart
