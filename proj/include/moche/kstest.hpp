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

#ifndef MOCHE_KSTEST_HPP_
#define MOCHE_KSTEST_HPP_

#include "moche/sample.hpp"

namespace moche {

struct KsVerdict {
  double statistic;  // sup-distance between the two empirical CDFs
  double threshold;  // rejection threshold at the chosen significance
  bool failed;       // true iff statistic > threshold (strict)
};

// Critical coefficient c(alpha) = sqrt(-ln(alpha/2) / 2).
// Requires 0 < alpha < 1; throws InvalidSignificance otherwise.
double critical_coefficient(double alpha);

// Rejection threshold for sample sizes n and m:
//   c(alpha) * sqrt((n + m) / (n * m)).
double ks_threshold(int n, int m, double alpha);

// Two-sample Kolmogorov-Smirnov statistic,
//   max over x in R union T of |F_R(x) - F_T(x)|,
// where F is the right-continuous empirical CDF. O(n + m) after sorting.
double ks_statistic(const Sample& reference, const Sample& test);

// Full test. The test fails (distributions deemed different) only on a strict
// exceedance; statistic == threshold passes.
KsVerdict ks_test(const Sample& reference, const Sample& test, double alpha);

}  // namespace moche

#endif  // MOCHE_KSTEST_HPP_
