// Copyright 2026 The MOCHE Authors
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

#ifndef MOCHE_SAMPLE_HPP_
#define MOCHE_SAMPLE_HPP_

#include <vector>

namespace moche {

// A finite multiset of reals. Points keep their input order as identity: the
// i-th value passed to the constructor is point i (0-based) forever, no matter
// how ties are broken internally. A sorted copy is kept alongside so empirical
// CDF evaluation is a binary search away.
class Sample {
 public:
  // Throws EmptySample if `values` is empty.
  explicit Sample(std::vector<double> values);

  int size() const { return static_cast<int>(by_id_.size()); }

  // Value of point `id`, 0 <= id < size(). Throws UnknownPointId.
  double value(int id) const;

  // Values in input order.
  const std::vector<double>& values() const { return by_id_; }

  // Values in nondecreasing order.
  const std::vector<double>& sorted() const { return sorted_; }

  // Empirical CDF at x: fraction of points <= x (right-continuous).
  double cdf(double x) const;

 private:
  std::vector<double> by_id_;
  std::vector<double> sorted_;
};

}  // namespace moche

#endif  // MOCHE_SAMPLE_HPP_
