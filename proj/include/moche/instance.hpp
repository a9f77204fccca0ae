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

#ifndef MOCHE_INSTANCE_HPP_
#define MOCHE_INSTANCE_HPP_

#include <span>
#include <vector>

#include "moche/kstest.hpp"
#include "moche/sample.hpp"

namespace moche {

// Prefix-count representation of a subset S of the test sample. prefix has
// length q + 1 with the sentinel prefix[0] == 0; prefix[i] counts the points
// of S with value <= the i-th base value. Subsets of equal multisets share one
// representation, which is exactly why all feasibility math runs on counts
// instead of point ids.
struct CumulativeVector {
  std::vector<int> prefix;

  int subset_size() const { return prefix.back(); }
};

// One explanation problem: reference sample R, test sample T, significance
// alpha, plus everything derived from them that the algorithms reuse.
//
// Indexing conventions, used consistently everywhere:
//   - base values are the q distinct values of R union T in increasing order,
//     addressed 1..q (base_value(i)); index 0 is the sentinel slot of the
//     cumulative vectors;
//   - cum_reference()[i] / cum_test()[i] count points <= base_value(i), so
//     index 0 holds 0 and index q holds n resp. m;
//   - test points are addressed by input-order id 0..m-1.
class Instance {
 public:
  const Sample& reference() const { return reference_; }
  const Sample& test() const { return test_; }
  double alpha() const { return alpha_; }

  // Critical coefficient c(alpha), cached at build time.
  double critical_value() const { return critical_; }

  int n() const { return reference_.size(); }
  int m() const { return test_.size(); }
  int q() const { return static_cast<int>(base_.size()); }

  // i-th smallest distinct value of R union T, 1 <= i <= q.
  double base_value(int i) const;

  // Base values in increasing order (0-based storage of the same sequence).
  const std::vector<double>& base_values() const { return base_; }

  // Cumulative count vectors of R and T over the base values, length q + 1.
  const std::vector<int>& cum_reference() const { return cum_reference_; }
  const std::vector<int>& cum_test() const { return cum_test_; }

  // Base index (1..q) of test point `id`'s value. Throws UnknownPointId.
  int base_index_of(int id) const;

  // Verdict of the original test, computed once from the count vectors.
  const KsVerdict& verdict() const { return verdict_; }

 private:
  friend Instance build_instance(Sample reference, Sample test, double alpha);
  Instance(Sample reference, Sample test, double alpha);

  Sample reference_;
  Sample test_;
  double alpha_;
  double critical_;
  std::vector<double> base_;
  std::vector<int> cum_reference_;
  std::vector<int> cum_test_;
  std::vector<int> base_index_by_id_;
  KsVerdict verdict_;
};

// Validates alpha, sorts and merges the samples, builds the count vectors and
// runs the original test. Throws InvalidSignificance on a bad alpha.
Instance build_instance(Sample reference, Sample test, double alpha);

// Cumulative vector of the subset of T given by `point_ids`. Ids must be
// in-range and distinct; throws UnknownPointId / DuplicatePointId.
CumulativeVector cumvec_of(const Instance& instance,
                           std::span<const int> point_ids);

// Empirical CDF of T minus S at base_value(i), where S is described by
// `subset`:  (cum_test()[i] - subset.prefix[i]) / (m - |S|).
// Throws InvalidIndex unless 1 <= i <= q, RemovedEverything if |S| == m.
double cdf_after_removal(const Instance& instance,
                         const CumulativeVector& subset, int i);

// Values of the test points *not* listed in `removed_ids`, in input order.
// Shared by everything that re-runs a direct test on a residual sample.
std::vector<double> residual_values(const Instance& instance,
                                    std::span<const int> removed_ids);

// Materializes a subset described by counts into a value multiset.
std::vector<double> subset_values(const Instance& instance,
                                  const CumulativeVector& subset);

// Residual test sample T minus S as a value multiset, with S given by counts.
std::vector<double> residual_from_counts(const Instance& instance,
                                         const CumulativeVector& subset);

}  // namespace moche

#endif  // MOCHE_INSTANCE_HPP_
