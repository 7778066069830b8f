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

#ifndef MASSART_LWE_HPP_
#define MASSART_LWE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "massart/common.hpp"

namespace massart {

enum class Domain : uint8_t { ModQ = 0, UnitTorus = 1 };
enum class Hypothesis : uint8_t { Null = 0, Alternative = 1 };
enum class SecretKind : uint8_t { UniformZq = 0, Binary = 1 };

std::string to_string(Hypothesis h);
Hypothesis parse_hypothesis(const std::string& s);
std::string to_string(SecretKind k);
SecretKind parse_secret_kind(const std::string& s);

// m samples (x, y) stored row-major. `noise` keeps z per sample when the
// generator retained it (alternative batches); it is updated by every
// transform so the defining relation can be rechecked.
struct LweBatch {
  int n = 0;
  Domain domain = Domain::UnitTorus;
  uint64_t q = 1;  // 1 on the unit torus
  Hypothesis tag = Hypothesis::Null;
  double sigma = 0.0;
  std::optional<std::vector<double>> secret;
  bool integer_x = false;
  bool discrete_noise = false;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> noise;

  size_t size() const { return ys.size(); }
  double modulus() const {
    return domain == Domain::ModQ ? static_cast<double>(q) : 1.0;
  }
  std::span<const double> x(size_t i) const {
    return {xs.data() + i * static_cast<size_t>(n), static_cast<size_t>(n)};
  }
  std::span<double> x(size_t i) {
    return {xs.data() + i * static_cast<size_t>(n), static_cast<size_t>(n)};
  }
};

// Randomness is drawn per chunk of samples from seeds derived from
// (seed, chunk index), so results do not depend on the thread count.
LweBatch gen_classic_lwe(int n, size_t m, uint64_t q, double sigma,
                         Hypothesis tag, SecretKind secret_kind,
                         uint64_t seed);

LweBatch gen_continuous_lwe(int n, size_t m, double sigma, Hypothesis tag,
                            uint64_t seed);
// Same, with a caller-supplied +-1 secret for the alternative case.
LweBatch gen_continuous_lwe(int n, size_t m, double sigma, Hypothesis tag,
                            const std::vector<double>& secret, uint64_t seed);

std::vector<double> draw_binary_secret(int n, Rng& rng);

// y <- mod_q(y + e), e continuous with scale sqrt(sigma_target^2 - sigma^2).
LweBatch continuize_noise(const LweBatch& batch, double sigma_target,
                          uint64_t seed);
// x <- mod_q(x + x'), x' continuous with scale sigma_coord per coordinate.
LweBatch continuize_samples(const LweBatch& batch, double sigma_coord,
                            uint64_t seed);
// Divide by q and switch to the unit torus.
LweBatch rescale_to_unit(const LweBatch& batch);

// Centered residual y - <x,s> mod the batch modulus, in [-q/2, q/2).
double recovered_noise(const LweBatch& batch, size_t i);

// Sequential access to unit-torus samples; counts what has been consumed.
class LweSource {
 public:
  virtual ~LweSource() = default;
  // Fills x (length n) and y; false once exhausted.
  virtual bool next(std::span<double> x, double& y) = 0;
  virtual int dimension() const = 0;
  size_t consumed() const { return consumed_; }

 protected:
  size_t consumed_ = 0;
};

class BatchSource : public LweSource {
 public:
  explicit BatchSource(const LweBatch& batch);
  bool next(std::span<double> x, double& y) override;
  int dimension() const override { return batch_.n; }

 private:
  const LweBatch& batch_;
};

// Unbounded on-the-fly continuous LWE samples.
class ContinuousLweStream : public LweSource {
 public:
  ContinuousLweStream(int n, double sigma, Hypothesis tag,
                      std::vector<double> secret, uint64_t seed);
  bool next(std::span<double> x, double& y) override;
  int dimension() const override { return n_; }

 private:
  int n_;
  double sigma_;
  Hypothesis tag_;
  std::vector<double> secret_;
  Rng rng_;
};

// Binary batch format, little-endian:
//   "MLWB" u32 version, u64 n, u64 m, u8 domain, u64 q, u8 tag, f64 sigma,
//   u8 flags (bit0 secret, bit1 noise, bit2 integer_x, bit3 discrete_noise),
//   [n x f64 secret], m x (n+1) f64 records (x then y), [m x f64 noise].
void write_batch(std::ostream& os, const LweBatch& batch);
LweBatch read_batch(std::istream& is);
void write_batch_file(const std::string& path, const LweBatch& batch);
LweBatch read_batch_file(const std::string& path);

}  // namespace massart

#endif  // MASSART_LWE_HPP_
