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

#include "moche/explainer.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "moche/error.hpp"

namespace moche {

namespace {

// Core of the partial-explanation test: tightens the upper bounds backwards
// by the budget already spent per index and checks the interval at every
// index stays nonempty. `bump_index` (0 = none) adds one phantom point with
// that base index on top of `prefix`, so candidate checks need no copy.
bool extends_to_qualified(const BoundsTable& bounds,
                          const std::vector<int>& prefix, int bump_index) {
  const int q = static_cast<int>(prefix.size()) - 1;
  int tightened = bounds.upper[static_cast<std::size_t>(q)];
  if (tightened < bounds.lower[static_cast<std::size_t>(q)]) return false;
  for (int i = q; i >= 1; --i) {
    int delta = prefix[static_cast<std::size_t>(i)] -
                prefix[static_cast<std::size_t>(i) - 1];
    if (i == bump_index) ++delta;
    tightened = std::min(tightened - delta,
                         bounds.upper[static_cast<std::size_t>(i) - 1]);
    if (tightened < bounds.lower[static_cast<std::size_t>(i) - 1]) {
      return false;
    }
  }
  return true;
}

}  // namespace

PreferenceList::PreferenceList(std::vector<int> order)
    : order_(std::move(order)) {
  rank_of_.assign(order_.size(), -1);
  for (std::size_t rank = 0; rank < order_.size(); ++rank) {
    const int id = order_[rank];
    if (id < 0 || id >= static_cast<int>(order_.size())) {
      fail(Errc::kInvalidPreference,
           "entry " + std::to_string(id) + " at rank " + std::to_string(rank) +
               " outside [0, " + std::to_string(order_.size()) + ")");
    }
    if (rank_of_[static_cast<std::size_t>(id)] != -1) {
      fail(Errc::kInvalidPreference,
           "point id " + std::to_string(id) + " ranked twice");
    }
    rank_of_[static_cast<std::size_t>(id)] = static_cast<int>(rank);
  }
}

int PreferenceList::at(int rank) const {
  if (rank < 0 || rank >= size()) {
    fail(Errc::kInvalidIndex, "rank " + std::to_string(rank) +
                                  " outside [0, " + std::to_string(size()) +
                                  ")");
  }
  return order_[static_cast<std::size_t>(rank)];
}

int PreferenceList::rank_of(int id) const {
  if (id < 0 || id >= size()) {
    fail(Errc::kUnknownPointId, "point id " + std::to_string(id) +
                                    " outside [0, " + std::to_string(size()) +
                                    ")");
  }
  return rank_of_[static_cast<std::size_t>(id)];
}

CumulativeVector incremental_cumvec_add(const Instance& instance,
                                        const CumulativeVector& subset,
                                        int point_id) {
  const int pos = instance.base_index_of(point_id);  // validates the id
  const int used = subset.prefix[static_cast<std::size_t>(pos)] -
                   subset.prefix[static_cast<std::size_t>(pos) - 1];
  const int avail = instance.cum_test()[static_cast<std::size_t>(pos)] -
                    instance.cum_test()[static_cast<std::size_t>(pos) - 1];
  if (used >= avail) {
    fail(Errc::kExceedsMultiplicity,
         "subset already holds all copies of the value of point " +
             std::to_string(point_id));
  }
  CumulativeVector out = subset;
  for (int i = pos; i <= instance.q(); ++i) {
    out.prefix[static_cast<std::size_t>(i)] += 1;
  }
  return out;
}

bool is_partial_explanation(const Instance& instance, int k,
                            const BoundsTable& bounds,
                            const CumulativeVector& subset) {
  if (k < 1 || k > instance.m() - 1 || bounds.subset_size != k) {
    fail(Errc::kInvalidSize,
         "bounds table does not match size " + std::to_string(k));
  }
  if (subset.subset_size() > k) {
    fail(Errc::kSubsetTooLarge, "subset of size " +
                                    std::to_string(subset.subset_size()) +
                                    " cannot extend to size " +
                                    std::to_string(k));
  }
  return extends_to_qualified(bounds, subset.prefix, 0);
}

Explanation most_comprehensible(const Instance& instance,
                                const PreferenceList& preference) {
  return most_comprehensible(instance, preference,
                             explanation_size(instance));
}

Explanation most_comprehensible(const Instance& instance,
                                const PreferenceList& preference,
                                const SizeResult& size) {
  if (!instance.verdict().failed) {
    fail(Errc::kTestNotFailed, "the test already passes; nothing to explain");
  }
  if (preference.size() != instance.m()) {
    fail(Errc::kInvalidPreference,
         "preference list ranks " + std::to_string(preference.size()) +
             " points, test sample has " + std::to_string(instance.m()));
  }
  const int k = size.size;
  const BoundsTable bounds = prefix_bounds(instance, k);

  Explanation out;
  out.size = k;
  out.size_lower_bound = size.lower_bound;
  out.size_scans = size.scans;

  CumulativeVector selected;
  selected.prefix.assign(static_cast<std::size_t>(instance.q()) + 1, 0);
  for (int rank = 0;
       rank < instance.m() && static_cast<int>(out.points.size()) < k;
       ++rank) {
    const int id = preference.at(rank);
    const int pos = instance.base_index_of(id);
    ++out.candidate_checks;
    if (extends_to_qualified(bounds, selected.prefix, pos)) {
      for (int i = pos; i <= instance.q(); ++i) {
        selected.prefix[static_cast<std::size_t>(i)] += 1;
      }
      out.points.push_back(id);
    }
  }
  if (static_cast<int>(out.points.size()) != k) {
    fail(Errc::kInternalVerificationFailure,
         "selection ended with " + std::to_string(out.points.size()) +
             " of " + std::to_string(k) + " points");
  }

  const KsVerdict check =
      ks_test(instance.reference(), Sample(residual_values(instance, out.points)),
              instance.alpha());
  if (check.failed) {
    fail(Errc::kInternalVerificationFailure,
         "selected subset does not reverse the test");
  }
  out.verified = true;
  return out;
}

}  // namespace moche
