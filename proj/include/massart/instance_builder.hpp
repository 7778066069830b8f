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

#ifndef MASSART_INSTANCE_BUILDER_HPP_
#define MASSART_INSTANCE_BUILDER_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "massart/common.hpp"
#include "massart/interval_set.hpp"
#include "massart/lwe.hpp"
#include "massart/rejection.hpp"

namespace massart {

// Folds u = i*t + t/2 + b (b in [0,t)) onto the offset k of the -1 branch
// that generates location u. Bands i = -1 and i = -2 are outside the domain.
double g_map(double u, double t);

// Image of the closed interval [a, b] under g_map, split at band boundaries.
// Parts inside the excluded bands are dropped.
IntervalSet g_image(double a, double b, double t);

struct CarvedSet {
  IntervalSet set;
  size_t slots = 0;  // number of (family, index) pairs removed
};

// [t/2, t/2 + eps) minus the g-images of the guard zones around the +1
// intervals whose index lies in the overlapping range. Fractional t/eps is
// handled by widening each index range to the enclosing integers.
CarvedSet build_b_minus(double t, double eps, double c_prime);

struct MassartConfig {
  ReductionParams params;  // psi and B are set per branch
  double eta = 0.05;
  double c_prime = 0.02;
  size_t m_prime = 1000;
  size_t m = 0;  // LWE sample budget
  int d = 1;
};

ReductionParams plus_branch(const MassartConfig& cfg);
ReductionParams minus_branch(const MassartConfig& cfg);

struct LabeledSample {
  std::vector<double> x;
  int y = 1;
};

struct GenerationFailure {
  size_t consumed = 0;
  size_t produced = 0;
};

struct InstanceResult {
  std::vector<LabeledSample> samples;
  std::optional<GenerationFailure> failure;
  size_t consumed = 0;
  bool ok() const { return !failure.has_value(); }
};

// Each of the m' outputs is labeled +1 with probability 1 - eta and then
// produced by rejection sampling over fresh source samples on that label's
// branch. Fails once more than cfg.m source samples would be needed.
InstanceResult generate_instance(LweSource& source, const MassartConfig& cfg,
                                 Rng& rng);

// Number of monomials of total degree <= d in n variables.
size_t veronese_dimension(int n, int d);
// Graded lexicographic monomials, constant first.
std::vector<double> veronese_lift(std::span<const double> x, int d,
                                  size_t cap = size_t{1} << 22);

// Interval-union classifier on the hidden-direction coordinate.
class PtfRegion {
 public:
  PtfRegion(double t, double eps, double c_prime);
  int operator()(double u) const { return plus_.contains(u) ? 1 : -1; }
  const IntervalSet& plus_set() const { return plus_; }

 private:
  IntervalSet plus_;
};

int ptf_region(double u, double t, double eps, double c_prime);

// Support of the branch output along the hidden direction:
// union over i in [i_lo, i_hi] of i*t + psi + (i+1)(B - psi).
IntervalSet branch_support(double t, double psi, const IntervalSet& B,
                           long i_lo, long i_hi);

struct LabeledHeader {
  uint64_t dim = 0;
  uint64_t count = 0;
  uint32_t d = 1;
  bool lifted = false;
};

// "MLAB" u32 version, u64 dim, u64 count, u32 d, u8 lifted, then per record
// dim x f64 followed by one label byte (+1 -> 1, -1 -> 0).
void write_labeled(std::ostream& os, const LabeledHeader& h,
                   const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> read_labeled(std::istream& is, LabeledHeader* h);
void write_labeled_file(const std::string& path, const LabeledHeader& h,
                        const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> read_labeled_file(const std::string& path,
                                             LabeledHeader* h);

}  // namespace massart

#endif  // MASSART_INSTANCE_BUILDER_HPP_
