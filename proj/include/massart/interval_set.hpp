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

#ifndef MASSART_INTERVAL_SET_HPP_
#define MASSART_INTERVAL_SET_HPP_

#include <string>
#include <vector>

namespace massart {

struct Interval {
  double lo;
  double hi;  // exclusive
};

// Finite union of disjoint half-open intervals [lo, hi), kept sorted.
// Endpoints may be infinite.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Accepts intervals in any order with either endpoint first; empty or
  // degenerate ones are dropped and overlapping/touching ones merged.
  explicit IntervalSet(std::vector<Interval> raw);
  static IntervalSet single(double lo, double hi);

  const std::vector<Interval>& intervals() const { return parts_; }
  size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  double measure() const;
  bool contains(double x) const;
  double lower() const;
  double upper() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet subtract(const IntervalSet& other) const;
  // True when every part lies inside [lo, hi] up to tol.
  bool within(double lo, double hi, double tol = 1e-12) const;

  std::string to_string() const;

 private:
  std::vector<Interval> parts_;
};

}  // namespace massart

#endif  // MASSART_INTERVAL_SET_HPP_
