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

#include "moche/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "moche/error.hpp"

namespace moche {

namespace {

// Prefix counts of `sorted` over `base`: out[i] = #points <= base[i-1].
std::vector<int> prefix_counts(const std::vector<double>& sorted,
                               const std::vector<double>& base) {
  std::vector<int> out(base.size() + 1, 0);
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), base[i]);
    out[i + 1] = static_cast<int>(it - sorted.begin());
  }
  return out;
}

}  // namespace

Instance::Instance(Sample reference, Sample test, double alpha)
    : reference_(std::move(reference)),
      test_(std::move(test)),
      alpha_(alpha),
      critical_(critical_coefficient(alpha)) {
  base_ = reference_.sorted();
  base_.insert(base_.end(), test_.sorted().begin(), test_.sorted().end());
  std::sort(base_.begin(), base_.end());
  base_.erase(std::unique(base_.begin(), base_.end()), base_.end());

  cum_reference_ = prefix_counts(reference_.sorted(), base_);
  cum_test_ = prefix_counts(test_.sorted(), base_);

  base_index_by_id_.resize(static_cast<std::size_t>(test_.size()));
  for (int id = 0; id < test_.size(); ++id) {
    auto it = std::lower_bound(base_.begin(), base_.end(), test_.value(id));
    base_index_by_id_[static_cast<std::size_t>(id)] =
        static_cast<int>(it - base_.begin()) + 1;
  }

  const double dn = static_cast<double>(n());
  const double dm = static_cast<double>(m());
  double best = 0.0;
  for (int i = 1; i <= q(); ++i) {
    const double gap = std::fabs(cum_reference_[i] / dn - cum_test_[i] / dm);
    if (gap > best) best = gap;
  }
  verdict_.statistic = best;
  verdict_.threshold = critical_ * std::sqrt((dn + dm) / (dn * dm));
  verdict_.failed = verdict_.statistic > verdict_.threshold;
}

double Instance::base_value(int i) const {
  if (i < 1 || i > q()) {
    fail(Errc::kInvalidIndex, "base index " + std::to_string(i) +
                                  " outside [1, " + std::to_string(q()) + "]");
  }
  return base_[static_cast<std::size_t>(i - 1)];
}

int Instance::base_index_of(int id) const {
  if (id < 0 || id >= m()) {
    fail(Errc::kUnknownPointId, "test point id " + std::to_string(id) +
                                    " outside [0, " + std::to_string(m()) +
                                    ")");
  }
  return base_index_by_id_[static_cast<std::size_t>(id)];
}

Instance build_instance(Sample reference, Sample test, double alpha) {
  critical_coefficient(alpha);  // validate before any heavier work
  return Instance(std::move(reference), std::move(test), alpha);
}

CumulativeVector cumvec_of(const Instance& instance,
                           std::span<const int> point_ids) {
  std::vector<char> seen(static_cast<std::size_t>(instance.m()), 0);
  CumulativeVector out;
  out.prefix.assign(static_cast<std::size_t>(instance.q()) + 1, 0);
  for (int id : point_ids) {
    const int i = instance.base_index_of(id);  // validates the id
    if (seen[static_cast<std::size_t>(id)]) {
      fail(Errc::kDuplicatePointId,
           "test point id " + std::to_string(id) + " listed twice");
    }
    seen[static_cast<std::size_t>(id)] = 1;
    out.prefix[static_cast<std::size_t>(i)] += 1;
  }
  for (int i = 1; i <= instance.q(); ++i) {
    out.prefix[static_cast<std::size_t>(i)] +=
        out.prefix[static_cast<std::size_t>(i) - 1];
  }
  return out;
}

double cdf_after_removal(const Instance& instance,
                         const CumulativeVector& subset, int i) {
  if (i < 1 || i > instance.q()) {
    fail(Errc::kInvalidIndex, "base index " + std::to_string(i) +
                                  " outside [1, " +
                                  std::to_string(instance.q()) + "]");
  }
  const int removed = subset.subset_size();
  if (removed >= instance.m()) {
    fail(Errc::kRemovedEverything, "subset removes the whole test sample");
  }
  const int kept =
      instance.cum_test()[static_cast<std::size_t>(i)] -
      subset.prefix[static_cast<std::size_t>(i)];
  return static_cast<double>(kept) /
         static_cast<double>(instance.m() - removed);
}

std::vector<double> residual_values(const Instance& instance,
                                    std::span<const int> removed_ids) {
  std::vector<char> removed(static_cast<std::size_t>(instance.m()), 0);
  for (int id : removed_ids) {
    if (id < 0 || id >= instance.m()) {
      fail(Errc::kUnknownPointId,
           "test point id " + std::to_string(id) + " outside [0, " +
               std::to_string(instance.m()) + ")");
    }
    if (removed[static_cast<std::size_t>(id)]) {
      fail(Errc::kDuplicatePointId,
           "test point id " + std::to_string(id) + " listed twice");
    }
    removed[static_cast<std::size_t>(id)] = 1;
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(instance.m()) - removed_ids.size());
  for (int id = 0; id < instance.m(); ++id) {
    if (!removed[static_cast<std::size_t>(id)]) {
      out.push_back(instance.test().value(id));
    }
  }
  return out;
}

std::vector<double> subset_values(const Instance& instance,
                                  const CumulativeVector& subset) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(subset.subset_size()));
  for (int i = 1; i <= instance.q(); ++i) {
    const int count = subset.prefix[static_cast<std::size_t>(i)] -
                      subset.prefix[static_cast<std::size_t>(i) - 1];
    for (int c = 0; c < count; ++c) out.push_back(instance.base_value(i));
  }
  return out;
}

std::vector<double> residual_from_counts(const Instance& instance,
                                         const CumulativeVector& subset) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(instance.m() - subset.subset_size()));
  for (int i = 1; i <= instance.q(); ++i) {
    const int in_test = instance.cum_test()[static_cast<std::size_t>(i)] -
                        instance.cum_test()[static_cast<std::size_t>(i) - 1];
    const int in_subset = subset.prefix[static_cast<std::size_t>(i)] -
                          subset.prefix[static_cast<std::size_t>(i) - 1];
    for (int c = 0; c < in_test - in_subset; ++c) {
      out.push_back(instance.base_value(i));
    }
  }
  return out;
}

}  // namespace moche
