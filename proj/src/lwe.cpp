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

#include "massart/lwe.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "massart/lattice_gaussian.hpp"
#include "parallel.hpp"

namespace massart {
namespace {

constexpr uint64_t kSecretStream = 0x5ec7e7ULL << 32;

void require_modq(const LweBatch& b, const char* what) {
  if (b.domain != Domain::ModQ)
    throw InvalidInput(std::string(what) + " requires a mod-q batch");
}

// Squared norm of the stored secret, or n when no secret is kept.
double secret_norm_sq(const LweBatch& b) {
  if (!b.secret) return static_cast<double>(b.n);
  double s = 0.0;
  for (double v : *b.secret) s += v * v;
  return s;
}

template <typename T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little,
                "batch I/O assumes a little-endian host");
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InvalidInput("truncated batch stream");
  return v;
}

}  // namespace

std::string to_string(Hypothesis h) {
  return h == Hypothesis::Null ? "null" : "alternative";
}

Hypothesis parse_hypothesis(const std::string& s) {
  if (s == "null") return Hypothesis::Null;
  if (s == "alt" || s == "alternative") return Hypothesis::Alternative;
  throw InvalidInput("unknown hypothesis tag: " + s);
}

std::string to_string(SecretKind k) {
  return k == SecretKind::Binary ? "binary" : "zq";
}

SecretKind parse_secret_kind(const std::string& s) {
  if (s == "binary") return SecretKind::Binary;
  if (s == "zq" || s == "uniform") return SecretKind::UniformZq;
  throw InvalidInput("unknown secret kind: " + s);
}

std::vector<double> draw_binary_secret(int n, Rng& rng) {
  std::vector<double> s(static_cast<size_t>(n));
  for (double& v : s) v = (rng() >> 63) ? 1.0 : -1.0;
  return s;
}

LweBatch gen_classic_lwe(int n, size_t m, uint64_t q, double sigma,
                         Hypothesis tag, SecretKind secret_kind,
                         uint64_t seed) {
  if (n < 1 || m < 1) throw InvalidInput("n and m must be positive");
  if (q < 2 || q > (1ULL << 31)) throw InvalidInput("q must lie in [2, 2^31]");
  if (!(sigma > 0.0)) throw InvalidInput("sigma must be positive");
  LweBatch b;
  b.n = n;
  b.domain = Domain::ModQ;
  b.q = q;
  b.tag = tag;
  b.sigma = sigma;
  b.integer_x = true;
  b.discrete_noise = true;
  b.xs.resize(m * static_cast<size_t>(n));
  b.ys.resize(m);
  const auto qi = static_cast<int64_t>(q);
  std::vector<int64_t> s(static_cast<size_t>(n));
  if (tag == Hypothesis::Alternative) {
    Rng srng = make_rng(seed, kSecretStream);
    if (secret_kind == SecretKind::Binary) {
      auto sb = draw_binary_secret(n, srng);
      for (int i = 0; i < n; ++i) s[i] = static_cast<int64_t>(sb[i]);
    } else {
      std::uniform_int_distribution<int64_t> ud(0, qi - 1);
      for (auto& v : s) v = ud(srng);
    }
    b.secret = std::vector<double>(s.begin(), s.end());
    b.noise.resize(m);
  }
  internal::for_chunks(m, [&](size_t c, size_t lo, size_t hi) {
    Rng rng = make_rng(seed, c);
    std::uniform_int_distribution<int64_t> ud(0, qi - 1);
    for (size_t i = lo; i < hi; ++i) {
      auto x = b.x(i);
      int64_t acc = 0;
      for (int j = 0; j < n; ++j) {
        const int64_t xj = ud(rng);
        x[j] = static_cast<double>(xj);
        acc = (acc + xj * s[j]) % qi;
      }
      if (tag == Hypothesis::Alternative) {
        const double z = sample_discrete_gaussian_1d({1.0, 0.0}, sigma, rng);
        b.noise[i] = z;
        int64_t y = (acc + static_cast<int64_t>(z)) % qi;
        if (y < 0) y += qi;
        b.ys[i] = static_cast<double>(y);
      } else {
        b.ys[i] = static_cast<double>(ud(rng));
      }
    }
  });
  return b;
}

LweBatch gen_continuous_lwe(int n, size_t m, double sigma, Hypothesis tag,
                            uint64_t seed) {
  std::vector<double> s;
  if (tag == Hypothesis::Alternative) {
    Rng srng = make_rng(seed, kSecretStream);
    s = draw_binary_secret(n, srng);
  }
  return gen_continuous_lwe(n, m, sigma, tag, s, seed);
}

LweBatch gen_continuous_lwe(int n, size_t m, double sigma, Hypothesis tag,
                            const std::vector<double>& secret,
                            uint64_t seed) {
  if (n < 1 || m < 1) throw InvalidInput("n and m must be positive");
  if (!(sigma > 0.0)) throw InvalidInput("sigma must be positive");
  LweBatch b;
  b.n = n;
  b.domain = Domain::UnitTorus;
  b.q = 1;
  b.tag = tag;
  b.sigma = sigma;
  b.xs.resize(m * static_cast<size_t>(n));
  b.ys.resize(m);
  if (tag == Hypothesis::Alternative) {
    if (secret.size() != static_cast<size_t>(n))
      throw InvalidInput("secret length must equal n");
    b.secret = secret;
    b.noise.resize(m);
  }
  internal::for_chunks(m, [&](size_t c, size_t lo, size_t hi) {
    Rng rng = make_rng(seed, c);
    for (size_t i = lo; i < hi; ++i) {
      auto x = b.x(i);
      for (double& v : x) v = uniform01(rng);
      if (tag == Hypothesis::Alternative) {
        const double z = gaussian(rng, sigma);
        b.noise[i] = z;
        b.ys[i] = mod1(dot(x, secret) + z);
      } else {
        b.ys[i] = uniform01(rng);
      }
    }
  });
  return b;
}

LweBatch continuize_noise(const LweBatch& batch, double sigma_target,
                          uint64_t seed) {
  require_modq(batch, "continuize_noise");
  if (!batch.discrete_noise)
    throw InvalidInput("continuize_noise expects discrete noise");
  if (!(sigma_target > batch.sigma))
    throw InvalidInput("sigma_target must exceed the batch sigma");
  const double sa = std::sqrt(sigma_target * sigma_target -
                              batch.sigma * batch.sigma);
  LweBatch out = batch;
  out.sigma = sigma_target;
  out.discrete_noise = false;
  const double q = batch.modulus();
  internal::for_chunks(batch.size(), [&](size_t c, size_t lo, size_t hi) {
    Rng rng = make_rng(seed, c);
    for (size_t i = lo; i < hi; ++i) {
      const double e = gaussian(rng, sa);
      out.ys[i] = modq(batch.ys[i] + e, q);
      if (!out.noise.empty()) out.noise[i] += e;
    }
  });
  return out;
}

LweBatch continuize_samples(const LweBatch& batch, double sigma_coord,
                            uint64_t seed) {
  require_modq(batch, "continuize_samples");
  if (!batch.integer_x)
    throw InvalidInput("continuize_samples expects integer x support");
  if (!(sigma_coord > 0.0)) throw InvalidInput("sigma_coord must be positive");
  LweBatch out = batch;
  out.integer_x = false;
  out.sigma = std::sqrt(batch.sigma * batch.sigma +
                        secret_norm_sq(batch) * sigma_coord * sigma_coord);
  const double q = batch.modulus();
  const int n = batch.n;
  internal::for_chunks(batch.size(), [&](size_t c, size_t lo, size_t hi) {
    Rng rng = make_rng(seed, c);
    for (size_t i = lo; i < hi; ++i) {
      auto x = out.x(i);
      double shift = 0.0;
      for (int j = 0; j < n; ++j) {
        const double e = gaussian(rng, sigma_coord);
        if (out.secret) shift += e * (*out.secret)[j];
        x[j] = modq(x[j] + e, q);
      }
      if (!out.noise.empty()) out.noise[i] -= shift;
    }
  });
  return out;
}

LweBatch rescale_to_unit(const LweBatch& batch) {
  require_modq(batch, "rescale_to_unit");
  LweBatch out = batch;
  const double q = batch.modulus();
  out.domain = Domain::UnitTorus;
  out.q = 1;
  out.sigma = batch.sigma / q;
  out.integer_x = false;
  for (double& v : out.xs) v /= q;
  for (double& v : out.ys) v /= q;
  for (double& v : out.noise) v /= q;
  return out;
}

double recovered_noise(const LweBatch& batch, size_t i) {
  if (!batch.secret) throw InvalidInput("batch has no secret");
  const double q = batch.modulus();
  double r = modq(batch.ys[i] - dot(batch.x(i), *batch.secret), q);
  if (r >= q / 2) r -= q;
  return r;
}

BatchSource::BatchSource(const LweBatch& batch) : batch_(batch) {
  if (batch.domain != Domain::UnitTorus)
    throw InvalidInput("rejection input must be a unit-torus batch");
}

bool BatchSource::next(std::span<double> x, double& y) {
  if (consumed_ >= batch_.size()) return false;
  auto src = batch_.x(consumed_);
  std::copy(src.begin(), src.end(), x.begin());
  y = batch_.ys[consumed_];
  ++consumed_;
  return true;
}

ContinuousLweStream::ContinuousLweStream(int n, double sigma, Hypothesis tag,
                                         std::vector<double> secret,
                                         uint64_t seed)
    : n_(n), sigma_(sigma), tag_(tag), secret_(std::move(secret)),
      rng_(derive_seed(seed, 0)) {
  if (tag == Hypothesis::Alternative && secret_.size() != static_cast<size_t>(n))
    throw InvalidInput("secret length must equal n");
}

bool ContinuousLweStream::next(std::span<double> x, double& y) {
  for (double& v : x) v = uniform01(rng_);
  if (tag_ == Hypothesis::Alternative)
    y = mod1(dot(x, secret_) + gaussian(rng_, sigma_));
  else
    y = uniform01(rng_);
  ++consumed_;
  return true;
}

void write_batch(std::ostream& os, const LweBatch& b) {
  os.write("MLWB", 4);
  put<uint32_t>(os, 1);
  put<uint64_t>(os, static_cast<uint64_t>(b.n));
  put<uint64_t>(os, b.size());
  put<uint8_t>(os, static_cast<uint8_t>(b.domain));
  put<uint64_t>(os, b.q);
  put<uint8_t>(os, static_cast<uint8_t>(b.tag));
  put<double>(os, b.sigma);
  uint8_t flags = (b.secret ? 1 : 0) | (b.noise.empty() ? 0 : 2) |
                  (b.integer_x ? 4 : 0) | (b.discrete_noise ? 8 : 0);
  put<uint8_t>(os, flags);
  if (b.secret)
    for (double v : *b.secret) put<double>(os, v);
  for (size_t i = 0; i < b.size(); ++i) {
    for (double v : b.x(i)) put<double>(os, v);
    put<double>(os, b.ys[i]);
  }
  for (double v : b.noise) put<double>(os, v);
  if (!os) throw std::runtime_error("failed writing batch");
}

LweBatch read_batch(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "MLWB", 4) != 0)
    throw InvalidInput("not a batch file");
  if (get<uint32_t>(is) != 1) throw InvalidInput("unsupported batch version");
  LweBatch b;
  b.n = static_cast<int>(get<uint64_t>(is));
  const auto m = get<uint64_t>(is);
  b.domain = static_cast<Domain>(get<uint8_t>(is));
  b.q = get<uint64_t>(is);
  b.tag = static_cast<Hypothesis>(get<uint8_t>(is));
  b.sigma = get<double>(is);
  const auto flags = get<uint8_t>(is);
  b.integer_x = flags & 4;
  b.discrete_noise = flags & 8;
  if (flags & 1) {
    b.secret.emplace(static_cast<size_t>(b.n));
    for (double& v : *b.secret) v = get<double>(is);
  }
  b.xs.resize(m * static_cast<size_t>(b.n));
  b.ys.resize(m);
  for (size_t i = 0; i < m; ++i) {
    for (double& v : b.x(i)) v = get<double>(is);
    b.ys[i] = get<double>(is);
  }
  if (flags & 2) {
    b.noise.resize(m);
    for (double& v : b.noise) v = get<double>(is);
  }
  return b;
}

void write_batch_file(const std::string& path, const LweBatch& batch) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_batch(os, batch);
}

LweBatch read_batch_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_batch(is);
}

}  // namespace massart
