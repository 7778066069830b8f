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

#include "massart/instance_builder.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace massart {
namespace {

double g_band(long j, double b, double t) {
  if (j >= 0) return b / static_cast<double>(j + 1) + t / 2;
  return (b - t) / static_cast<double>(j + 2) + t / 2;
}

long band_of(double u, double t) {
  return static_cast<long>(std::floor((u - t / 2) / t));
}

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InvalidInput("truncated labeled stream");
  return v;
}

}  // namespace

double g_map(double u, double t) {
  const long i = band_of(u, t);
  if (i == -1 || i == -2)
    throw InvalidInput("g_map is undefined on [-1.5t, 0.5t)");
  const double b = u - (static_cast<double>(i) * t + t / 2);
  return g_band(i, b, t);
}

IntervalSet g_image(double a, double b, double t) {
  if (a > b) std::swap(a, b);
  std::vector<Interval> parts;
  for (long j = band_of(a, t); j <= band_of(b, t); ++j) {
    if (j == -1 || j == -2) continue;
    const double start = static_cast<double>(j) * t + t / 2;
    const double lo = std::max(a, start), hi = std::min(b, start + t);
    if (lo > hi) continue;
    const double g1 = g_band(j, lo - start, t), g2 = g_band(j, hi - start, t);
    // Closed image; nudge so a single point still removes a sliver.
    parts.push_back({std::min(g1, g2),
                     std::nextafter(std::max(g1, g2),
                                    std::numeric_limits<double>::infinity())});
  }
  return IntervalSet(std::move(parts));
}

CarvedSet build_b_minus(double t, double eps, double c_prime) {
  if (!(t > 0.0 && eps > 0.0) || eps > t / 2)
    throw InvalidInput("need 0 < eps <= t/2");
  if (c_prime < 0.0) throw InvalidInput("c' must be nonnegative");
  CarvedSet out;
  IntervalSet base = IntervalSet::single(t / 2, t / 2 + eps);
  if (c_prime == 0.0) {
    out.set = base;
    return out;
  }
  const double r = t / eps, w = 2.0 * c_prime * eps;
  std::vector<Interval> removed;
  auto carve = [&](double a, double b) {
    const IntervalSet img = g_image(a, b, t);
    for (const auto& iv : img.intervals()) removed.push_back(iv);
    ++out.slots;
  };
  const long p_lo = static_cast<long>(std::floor(r / 2 - 1));
  const long p_hi = static_cast<long>(std::ceil(r - 1));
  for (long i = p_lo; i <= p_hi; ++i) {
    const double it = static_cast<double>(i) * t;
    const double right = it + static_cast<double>(i + 1) * eps;
    carve(it - w, it);
    carve(right, right + w);
  }
  const long n_lo = static_cast<long>(std::floor(-r - 1));
  const long n_hi = static_cast<long>(std::ceil(-r / 2 - 1));
  for (long i = n_lo; i <= n_hi; ++i) {
    const double it = static_cast<double>(i) * t;
    const double left = it + static_cast<double>(i + 1) * eps;
    carve(left - w, left);
    carve(it, it + w);
  }
  out.set = base.subtract(IntervalSet(std::move(removed)));
  if (out.set.empty()) throw ConfigError("carved set is empty; reduce c'");
  return out;
}

ReductionParams plus_branch(const MassartConfig& cfg) {
  ReductionParams p = cfg.params;
  p.psi = 0.0;
  p.B = IntervalSet::single(0.0, p.eps);
  p.m_prime = cfg.m_prime;
  p.consts.c_prime = cfg.c_prime;
  return p;
}

ReductionParams minus_branch(const MassartConfig& cfg) {
  ReductionParams p = cfg.params;
  p.psi = p.t / 2;
  p.B = build_b_minus(p.t, p.eps, cfg.c_prime).set;
  p.m_prime = cfg.m_prime;
  p.consts.c_prime = cfg.c_prime;
  return p;
}

InstanceResult generate_instance(LweSource& source, const MassartConfig& cfg,
                                 Rng& rng) {
  if (!(cfg.eta >= 0.0 && cfg.eta < 0.5))
    throw InvalidInput("eta must lie in [0, 1/2)");
  const RejectionSampler plus(plus_branch(cfg));
  const RejectionSampler minus(minus_branch(cfg));
  const size_t n = static_cast<size_t>(source.dimension());
  InstanceResult res;
  res.samples.reserve(cfg.m_prime);
  std::vector<double> x(n);
  double y = 0.0;
  for (size_t j = 0; j < cfg.m_prime; ++j) {
    const int label = uniform01(rng) < cfg.eta ? -1 : 1;
    const RejectionSampler& rs = label > 0 ? plus : minus;
    for (;;) {
      if (source.consumed() >= cfg.m || !source.next(x, y)) {
        res.consumed = source.consumed();
        res.failure = GenerationFailure{res.consumed, res.samples.size()};
        return res;
      }
      if (auto k = rs.accept_step(y, rng)) {
        LabeledSample s;
        s.x.resize(n);
        rs.output_step(x, *k, rng, s.x);
        s.y = label;
        res.samples.push_back(std::move(s));
        break;
      }
    }
  }
  res.consumed = source.consumed();
  return res;
}

size_t veronese_dimension(int n, int d) {
  if (n < 1 || d < 0) throw InvalidInput("need n >= 1 and d >= 0");
  // C(n+d, d) built incrementally; each step stays an integer.
  long double c = 1.0L;
  for (int k = 1; k <= d; ++k) c = c * (n + k) / k;
  if (c > static_cast<long double>(std::numeric_limits<size_t>::max() / 2))
    throw ConfigError("monomial count overflows");
  return static_cast<size_t>(std::llround(c));
}

std::vector<double> veronese_lift(std::span<const double> x, int d,
                                  size_t cap) {
  if (d < 1) throw InvalidInput("degree must be at least 1");
  const int n = static_cast<int>(x.size());
  const size_t M = veronese_dimension(n, d);
  if (M > cap) throw ConfigError("lifted dimension exceeds the configured cap");
  std::vector<double> out;
  out.reserve(M);
  out.push_back(1.0);
  // Previous degree's monomials and the index of their largest variable.
  std::vector<double> prev{1.0};
  std::vector<int> last{0};
  for (int deg = 1; deg <= d; ++deg) {
    std::vector<double> cur;
    std::vector<int> cur_last;
    for (size_t m = 0; m < prev.size(); ++m) {
      for (int j = last[m]; j < n; ++j) {
        cur.push_back(prev[m] * x[j]);
        cur_last.push_back(j);
      }
    }
    out.insert(out.end(), cur.begin(), cur.end());
    prev = std::move(cur);
    last = std::move(cur_last);
  }
  return out;
}

PtfRegion::PtfRegion(double t, double eps, double c_prime) {
  if (!(t > 0.0 && eps > 0.0)) throw InvalidInput("t and eps must be positive");
  const double r = t / eps, m = c_prime * eps;
  const double inf = std::numeric_limits<double>::infinity();
  auto closed = [&](double a, double b) {
    return Interval{a, std::nextafter(b, inf)};
  };
  std::vector<Interval> parts;
  long i = 0;
  for (; static_cast<double>(i + 1) < r; ++i) {
    const double it = static_cast<double>(i) * t;
    parts.push_back(closed(it - m, it + static_cast<double>(i + 1) * eps + m));
  }
  // From here on the intervals are longer than t and tile the half-line.
  parts.push_back({static_cast<double>(i) * t - m, inf});
  i = -1;
  for (; static_cast<double>(-(i + 1)) < r; --i) {
    const double it = static_cast<double>(i) * t;
    parts.push_back(closed(it + static_cast<double>(i + 1) * eps - m, it + m));
  }
  parts.push_back({-inf, std::nextafter(static_cast<double>(i) * t + m, inf)});
  plus_ = IntervalSet(std::move(parts));
}

int ptf_region(double u, double t, double eps, double c_prime) {
  return PtfRegion(t, eps, c_prime)(u);
}

IntervalSet branch_support(double t, double psi, const IntervalSet& B,
                           long i_lo, long i_hi) {
  std::vector<Interval> parts;
  for (long i = i_lo; i <= i_hi; ++i) {
    if (i == -1) continue;  // a single point
    const double base = static_cast<double>(i) * t + psi;
    const double f = static_cast<double>(i + 1);
    for (const auto& iv : B.intervals())
      parts.push_back({base + f * (iv.lo - psi), base + f * (iv.hi - psi)});
  }
  return IntervalSet(std::move(parts));
}

void write_labeled(std::ostream& os, const LabeledHeader& h,
                   const std::vector<LabeledSample>& samples) {
  os.write("MLAB", 4);
  put<uint32_t>(os, 1);
  put<uint64_t>(os, h.dim);
  put<uint64_t>(os, samples.size());
  put<uint32_t>(os, h.d);
  put<uint8_t>(os, h.lifted ? 1 : 0);
  for (const auto& s : samples) {
    if (s.x.size() != h.dim) throw InvalidInput("record width mismatch");
    for (double v : s.x) put<double>(os, v);
    put<uint8_t>(os, s.y > 0 ? 1 : 0);
  }
  if (!os) throw std::runtime_error("failed writing labeled samples");
}

std::vector<LabeledSample> read_labeled(std::istream& is, LabeledHeader* h) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "MLAB", 4) != 0)
    throw InvalidInput("not a labeled-sample file");
  if (get<uint32_t>(is) != 1) throw InvalidInput("unsupported version");
  LabeledHeader hdr;
  hdr.dim = get<uint64_t>(is);
  hdr.count = get<uint64_t>(is);
  hdr.d = get<uint32_t>(is);
  hdr.lifted = get<uint8_t>(is) != 0;
  std::vector<LabeledSample> out(hdr.count);
  for (auto& s : out) {
    s.x.resize(hdr.dim);
    for (double& v : s.x) v = get<double>(is);
    s.y = get<uint8_t>(is) ? 1 : -1;
  }
  if (h) *h = hdr;
  return out;
}

void write_labeled_file(const std::string& path, const LabeledHeader& h,
                        const std::vector<LabeledSample>& samples) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_labeled(os, h, samples);
}

std::vector<LabeledSample> read_labeled_file(const std::string& path,
                                             LabeledHeader* h) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_labeled(is, h);
}

}  // namespace massart
