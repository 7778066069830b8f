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

#ifndef MASSART_COMMON_HPP_
#define MASSART_COMMON_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace massart {

// Bad argument values (non-finite input, violated preconditions).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters for which a construction step is undefined.
class Infeasible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unusable configuration (grid too coarse, empty carved set, size caps).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;

// splitmix64 finalizer, used to derive independent stream seeds.
inline uint64_t mix_seed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  return mix_seed(mix_seed(master) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(uint64_t master, uint64_t stream) {
  return Rng(derive_seed(master, stream));
}

inline double uniform01(Rng& rng) {
  // 53 random bits, result in [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Continuous Gaussian with scale sigma: density proportional to
// exp(-pi x^2 / sigma^2), standard deviation sigma / sqrt(2 pi).
inline double gaussian(Rng& rng, double sigma) {
  std::normal_distribution<double> nd(0.0, sigma / std::sqrt(2.0 * kPi));
  return nd(rng);
}

// Reduction into [0, 1); mod1(1.0) == 0 and negatives wrap via floor.
inline double mod1(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

inline double modq(double x, double q) {
  double r = x - q * std::floor(x / q);
  if (r >= q || r < 0.0) r = 0.0;
  return r;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace massart

#endif  // MASSART_COMMON_HPP_
