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

#include "moche/sizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "moche/error.hpp"

namespace moche {

namespace {

// The bound formulas round real expressions to integers. When such an
// expression is an integer up to representation noise, ceil/floor must not
// jump to the neighbour, so values within a relative 1e-9 of an integer snap
// to it first.
double snap_integer(double x) {
  const double rounded = std::nearbyint(x);
  if (std::fabs(x - rounded) <= 1e-9 * std::max(1.0, std::fabs(x))) {
    return rounded;
  }
  return x;
}

int ceil_snapped(double x) {
  return static_cast<int>(std::ceil(snap_integer(x)));
}

int floor_snapped(double x) {
  return static_cast<int>(std::floor(snap_integer(x)));
}

void check_subset_size(const Instance& instance, int h) {
  if (h < 0 || h > instance.m() - 1) {
    fail(Errc::kInvalidSize, "subset size " + std::to_string(h) +
                                 " outside [0, " +
                                 std::to_string(instance.m() - 1) + "]");
  }
}

}  // namespace

double slack_radius(const Instance& instance, int h) {
  check_subset_size(instance, h);
  const double kept = static_cast<double>(instance.m() - h);
  const double n = static_cast<double>(instance.n());
  return instance.critical_value() * std::sqrt(kept + kept * kept / n);
}

double target_count(const Instance& instance, int i, int h) {
  check_subset_size(instance, h);
  if (i < 1 || i > instance.q()) {
    fail(Errc::kInvalidIndex, "base index " + std::to_string(i) +
                                  " outside [1, " +
                                  std::to_string(instance.q()) + "]");
  }
  const double scale = static_cast<double>(instance.m() - h) /
                       static_cast<double>(instance.n());
  return instance.cum_test()[static_cast<std::size_t>(i)] -
         scale * instance.cum_reference()[static_cast<std::size_t>(i)];
}

BoundsTable prefix_bounds(const Instance& instance, int h) {
  check_subset_size(instance, h);
  const int q = instance.q();
  const double radius = slack_radius(instance, h);
  const double scale = static_cast<double>(instance.m() - h) /
                       static_cast<double>(instance.n());
  const std::vector<int>& ct = instance.cum_test();
  const std::vector<int>& cr = instance.cum_reference();

  BoundsTable table;
  table.subset_size = h;
  table.lower.assign(static_cast<std::size_t>(q) + 1, 0);
  table.upper.assign(static_cast<std::size_t>(q) + 1, 0);

  double running_max = -1e300;
  for (int i = 1; i <= q; ++i) {
    const double target = ct[static_cast<std::size_t>(i)] -
                          scale * cr[static_cast<std::size_t>(i)];
    running_max = std::max(running_max, target);
    int lo = ceil_snapped(running_max - radius);
    lo = std::max(lo, h - instance.m() + ct[static_cast<std::size_t>(i)]);
    lo = std::max(lo, 0);
    int hi = floor_snapped(target + radius);
    hi = std::min(hi, ct[static_cast<std::size_t>(i)]);
    hi = std::min(hi, h);
    table.lower[static_cast<std::size_t>(i)] = lo;
    table.upper[static_cast<std::size_t>(i)] = hi;
  }
  return table;
}

bool exists_qualified(const Instance& instance, int h) {
  check_subset_size(instance, h);
  const int q = instance.q();
  const double radius = slack_radius(instance, h);
  const double scale = static_cast<double>(instance.m() - h) /
                       static_cast<double>(instance.n());
  const std::vector<int>& ct = instance.cum_test();
  const std::vector<int>& cr = instance.cum_reference();

  double running_max = -1e300;
  for (int i = 1; i <= q; ++i) {
    const double target = ct[static_cast<std::size_t>(i)] -
                          scale * cr[static_cast<std::size_t>(i)];
    running_max = std::max(running_max, target);
    int lo = ceil_snapped(running_max - radius);
    lo = std::max(lo, h - instance.m() + ct[static_cast<std::size_t>(i)]);
    lo = std::max(lo, 0);
    int hi = floor_snapped(target + radius);
    hi = std::min(hi, ct[static_cast<std::size_t>(i)]);
    hi = std::min(hi, h);
    if (lo > hi) return false;
  }
  return true;
}

bool necessary_holds(const Instance& instance, int h) {
  check_subset_size(instance, h);
  const int q = instance.q();
  const double radius = slack_radius(instance, h);
  const double scale = static_cast<double>(instance.m() - h) /
                       static_cast<double>(instance.n());
  const std::vector<int>& ct = instance.cum_test();
  const std::vector<int>& cr = instance.cum_reference();

  double running_max = -1e300;
  for (int i = 1; i <= q; ++i) {
    const double target = ct[static_cast<std::size_t>(i)] -
                          scale * cr[static_cast<std::size_t>(i)];
    running_max = std::max(running_max, target);
    if (floor_snapped(target + radius) < 0) return false;
    if (ceil_snapped(running_max - radius) > h) return false;
    if (running_max - radius > target + radius) return false;
  }
  return true;
}

int lower_bound_size(const Instance& instance) {
  const int m = instance.m();
  if (m < 2 || !necessary_holds(instance, m - 1)) {
    fail(Errc::kNoExplanationExists,
         "no proper subset of the test sample can reverse the test");
  }
  int lo = 1;
  int hi = m - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (necessary_holds(instance, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

SizeResult explanation_size(const Instance& instance) {
  if (!instance.verdict().failed) {
    fail(Errc::kTestNotFailed, "the test already passes; nothing to explain");
  }
  SizeResult result;
  result.lower_bound = lower_bound_size(instance);
  result.scans = 0;
  for (int h = result.lower_bound; h <= instance.m() - 1; ++h) {
    ++result.scans;
    if (exists_qualified(instance, h)) {
      result.size = h;
      return result;
    }
  }
  fail(Errc::kNoExplanationExists,
       "no proper subset of the test sample can reverse the test");
}

CumulativeVector witness_subset(const Instance& instance, int h) {
  if (!exists_qualified(instance, h)) {
    fail(Errc::kNotQualifiedSize,
         "no subset of size " + std::to_string(h) + " reverses the test");
  }
  const BoundsTable table = prefix_bounds(instance, h);
  const int q = instance.q();
  const std::vector<int>& ct = instance.cum_test();

  CumulativeVector subset;
  subset.prefix.assign(static_cast<std::size_t>(q) + 1, 0);
  subset.prefix[static_cast<std::size_t>(q)] =
      table.upper[static_cast<std::size_t>(q)];
  for (int i = q; i >= 1; --i) {
    const int here = subset.prefix[static_cast<std::size_t>(i)];
    const int avail = ct[static_cast<std::size_t>(i)] -
                      ct[static_cast<std::size_t>(i) - 1];
    int prev = std::min(table.upper[static_cast<std::size_t>(i) - 1], here);
    prev = std::max(prev, table.lower[static_cast<std::size_t>(i) - 1]);
    prev = std::max(prev, here - avail);
    if (prev > here || prev > table.upper[static_cast<std::size_t>(i) - 1]) {
      fail(Errc::kInternalVerificationFailure,
           "witness construction left the feasible region at index " +
               std::to_string(i - 1));
    }
    subset.prefix[static_cast<std::size_t>(i) - 1] = prev;
  }

  const KsVerdict check = ks_test(
      instance.reference(), Sample(residual_from_counts(instance, subset)),
      instance.alpha());
  if (check.failed) {
    fail(Errc::kInternalVerificationFailure,
         "witness subset of size " + std::to_string(h) +
             " does not reverse the test");
  }
  return subset;
}

}  // namespace moche
