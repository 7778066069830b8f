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

#include "massart/interval_set.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace massart {

IntervalSet::IntervalSet(std::vector<Interval> raw) {
  for (auto& iv : raw)
    if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
  std::erase_if(raw, [](const Interval& iv) { return !(iv.lo < iv.hi); });
  std::sort(raw.begin(), raw.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : raw) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(iv);
    }
  }
}

IntervalSet IntervalSet::single(double lo, double hi) {
  return IntervalSet({{lo, hi}});
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& iv : parts_) m += iv.hi - iv.lo;
  return m;
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(
      parts_.begin(), parts_.end(), x,
      [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  --it;
  return x >= it->lo && x < it->hi;
}

double IntervalSet::lower() const { return parts_.front().lo; }
double IntervalSet::upper() const { return parts_.back().hi; }

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const double lo = std::max(parts_[i].lo, other.parts_[j].lo);
    const double hi = std::min(parts_[i].hi, other.parts_[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (parts_[i].hi < other.parts_[j].hi) ++i; else ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
  std::vector<Interval> out;
  size_t j = 0;
  for (const auto& iv : parts_) {
    double cur = iv.lo;
    while (j < other.parts_.size() && other.parts_[j].hi <= cur) ++j;
    size_t k = j;
    while (k < other.parts_.size() && other.parts_[k].lo < iv.hi) {
      if (other.parts_[k].lo > cur) out.push_back({cur, other.parts_[k].lo});
      cur = std::max(cur, other.parts_[k].hi);
      if (cur >= iv.hi) break;
      ++k;
    }
    if (cur < iv.hi) out.push_back({cur, iv.hi});
  }
  return IntervalSet(std::move(out));
}

bool IntervalSet::within(double lo, double hi, double tol) const {
  return std::all_of(parts_.begin(), parts_.end(), [&](const Interval& iv) {
    return iv.lo >= lo - tol && iv.hi <= hi + tol;
  });
}

std::string IntervalSet::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (size_t i = 0; i < parts_.size(); ++i)
    os << (i ? " u " : "") << "[" << parts_[i].lo << ", " << parts_[i].hi
       << ")";
  return parts_.empty() ? "{}" : os.str();
}

}  // namespace massart
