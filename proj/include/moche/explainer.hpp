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

#ifndef MOCHE_EXPLAINER_HPP_
#define MOCHE_EXPLAINER_HPP_

#include <vector>

#include "moche/sizer.hpp"

namespace moche {

// A strict total order over the test points: order()[r] is the id preferred
// at rank r, rank 0 most preferred. Must be a permutation of 0..size-1.
class PreferenceList {
 public:
  // Throws InvalidPreference unless `order` is a permutation of its indices.
  explicit PreferenceList(std::vector<int> order);

  int size() const { return static_cast<int>(order_.size()); }
  int at(int rank) const;      // id at `rank`; throws InvalidIndex
  int rank_of(int id) const;   // rank of `id`; throws UnknownPointId
  const std::vector<int>& order() const { return order_; }

 private:
  std::vector<int> order_;
  std::vector<int> rank_of_;
};

struct Explanation {
  std::vector<int> points;  // selected test point ids, most preferred first
  int size = 0;             // == points.size() == minimum explanation size
  int size_lower_bound = 0;
  int size_scans = 0;        // feasibility checks in the size search
  int candidate_checks = 0;  // partial-explanation checks in the selection
  bool verified = false;     // final direct re-test of the residual passed
};

// `subset` plus `1 <= count <= avail` further points with value base_value(i),
// as a fresh cumulative vector. Throws UnknownPointId for a bad id and
// ExceedsMultiplicity when T holds no unused copy of that value.
CumulativeVector incremental_cumvec_add(const Instance& instance,
                                        const CumulativeVector& subset,
                                        int point_id);

// True iff `subset` extends to a qualified subset of size exactly k, i.e.
// some superset of its value counts of total size k reverses the test.
// `bounds` must be prefix_bounds(instance, k). Runs one backward sweep over
// the indices, O(q). Throws SubsetTooLarge if |subset| > k.
bool is_partial_explanation(const Instance& instance, int k,
                            const BoundsTable& bounds,
                            const CumulativeVector& subset);

// The most comprehensible explanation: among the minimum-size subsets whose
// removal reverses the test, the one whose sorted rank sequence is
// lexicographically smallest under `preference`. One pass over the test
// points in preference order, keeping a point iff the selection so far plus
// that point still extends to a qualified subset of the minimum size.
// Throws TestNotFailed, NoExplanationExists, InvalidPreference.
Explanation most_comprehensible(const Instance& instance,
                                const PreferenceList& preference);

// Same, with the size search already done (the two phases can then be timed
// separately). `size` must come from explanation_size on this instance.
Explanation most_comprehensible(const Instance& instance,
                                const PreferenceList& preference,
                                const SizeResult& size);

}  // namespace moche

#endif  // MOCHE_EXPLAINER_HPP_
