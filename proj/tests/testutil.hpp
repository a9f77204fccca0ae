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

#ifndef MOCHE_TESTS_TESTUTIL_HPP_
#define MOCHE_TESTS_TESTUTIL_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "moche/error.hpp"
#include "moche/instance.hpp"
#include "moche/sample.hpp"

namespace moche_test {

// Deliberately naive O(n*m) statistic: evaluates both empirical CDFs by
// counting at every sample point. The reference the fast merge is checked
// against.
inline double naive_statistic(const std::vector<double>& reference,
                              const std::vector<double>& test) {
  auto cdf = [](const std::vector<double>& sample, double x) {
    std::size_t count = 0;
    for (double v : sample) {
      if (v <= x) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(sample.size());
  };
  double best = 0.0;
  auto consider = [&](double x) {
    const double gap = std::fabs(cdf(reference, x) - cdf(test, x));
    if (gap > best) best = gap;
  };
  for (double x : reference) consider(x);
  for (double x : test) consider(x);
  return best;
}

// The worked instance used throughout the unit tests:
//   R = {14, 14, 14, 14, 20, 20, 20, 20}, T = {13, 13, 12, 20}, alpha = 0.3.
// Base values 12, 13, 14, 20; the test fails with statistic 0.75 against a
// threshold of ~0.5964; minimum explanation size 2.
inline moche::Instance golden_instance() {
  return moche::build_instance(
      moche::Sample({14, 14, 14, 14, 20, 20, 20, 20}),
      moche::Sample({13, 13, 12, 20}), 0.3);
}

// Runs `body`, requiring it to throw a moche::Error with this exact code.
template <typename Body>
bool fails_with(moche::Errc code, Body&& body) {
  try {
    body();
  } catch (const moche::Error& error) {
    return error.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace moche_test

#endif  // MOCHE_TESTS_TESTUTIL_HPP_
