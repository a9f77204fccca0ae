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

#ifndef MOCHE_SIZER_HPP_
#define MOCHE_SIZER_HPP_

#include "moche/instance.hpp"

namespace moche {

// Per-index inclusive bounds on the prefix counts of any size-h subset whose
// removal makes the test pass. A "qualified" subset of size h exists iff
// lower[i] <= upper[i] for every i (the bounds are tight in that sense).
struct BoundsTable {
  int subset_size;         // the h these bounds were computed for
  std::vector<int> lower;  // length q + 1, lower[0] == 0
  std::vector<int> upper;  // length q + 1, upper[0] == 0
};

struct SizeResult {
  int size;         // minimum subset size whose removal reverses the test
  int lower_bound;  // cheap lower bound the search started from
  int scans;        // exact feasibility checks spent in the final scan
};

// Slack radius around the target count at size h:
//   c(alpha) * sqrt((m - h) + (m - h)^2 / n).
// Requires 0 <= h <= m - 1; throws InvalidSize otherwise.
double slack_radius(const Instance& instance, int h);

// Ideal number of removed points at or below base_value(i) when removing h
// points in total: cum_test()[i] - ((m - h) / n) * cum_reference()[i].
// Removing close to this many keeps the residual CDF glued to the reference
// CDF at base_value(i). Requires 1 <= i <= q and 0 <= h <= m - 1.
double target_count(const Instance& instance, int i, int h);

// Feasibility interval per base index for subsets of size exactly h, derived
// from the slack radius, the running max of the target counts and the
// multiset constraints 0 <= prefix[i] <= min(cum_test()[i], h).
BoundsTable prefix_bounds(const Instance& instance, int h);

// True iff some size-h subset's removal makes the test pass, i.e. the bounds
// table is nonempty at every index.
bool exists_qualified(const Instance& instance, int h);

// Cheap necessary condition for a qualified size-h subset, monotone in h:
// once it holds it keeps holding for larger h. May report true where
// exists_qualified is false, never the other way round.
bool necessary_holds(const Instance& instance, int h);

// Smallest h in [1, m-1] passing the necessary condition, found by binary
// search. Throws NoExplanationExists if even h = m - 1 fails it.
int lower_bound_size(const Instance& instance);

// Minimum explanation size: binary search for the lower bound, then a linear
// scan with the exact feasibility check. Requires a failed test
// (TestNotFailed) and throws NoExplanationExists if no size works.
SizeResult explanation_size(const Instance& instance);

// Deterministic qualified subset of size h as a cumulative vector, built
// backwards from the bounds. Throws NotQualifiedSize if none exists.
CumulativeVector witness_subset(const Instance& instance, int h);

}  // namespace moche

#endif  // MOCHE_SIZER_HPP_
