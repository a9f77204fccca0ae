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

#include "moche/kstest.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "moche/error.hpp"

namespace moche {

double critical_coefficient(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    fail(Errc::kInvalidSignificance,
         "significance must lie strictly between 0 and 1, got " +
             std::to_string(alpha));
  }
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

double ks_threshold(int n, int m, double alpha) {
  const double c = critical_coefficient(alpha);
  if (n < 1 || m < 1) {
    fail(Errc::kEmptySample, "both samples need at least one point");
  }
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

double ks_statistic(const Sample& reference, const Sample& test) {
  const std::vector<double>& a = reference.sorted();
  const std::vector<double>& b = test.sorted();
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j >= b.size()) {
      x = a[i];
    } else if (i >= a.size()) {
      x = b[j];
    } else {
      x = std::min(a[i], b[j]);
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    const double gap = std::fabs(static_cast<double>(i) / n -
                                 static_cast<double>(j) / m);
    if (gap > best) best = gap;
  }
  return best;
}

KsVerdict ks_test(const Sample& reference, const Sample& test, double alpha) {
  KsVerdict verdict;
  verdict.threshold = ks_threshold(reference.size(), test.size(), alpha);
  verdict.statistic = ks_statistic(reference, test);
  verdict.failed = verdict.statistic > verdict.threshold;
  return verdict;
}

}  // namespace moche
