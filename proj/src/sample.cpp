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

#include "moche/sample.hpp"

#include <algorithm>
#include <string>

#include "moche/error.hpp"

namespace moche {

Sample::Sample(std::vector<double> values) : by_id_(std::move(values)) {
  if (by_id_.empty()) fail(Errc::kEmptySample, "sample has no points");
  sorted_ = by_id_;
  std::sort(sorted_.begin(), sorted_.end());
}

double Sample::value(int id) const {
  if (id < 0 || id >= size()) {
    fail(Errc::kUnknownPointId, "point id " + std::to_string(id) +
                                    " outside [0, " + std::to_string(size()) +
                                    ")");
  }
  return by_id_[static_cast<std::size_t>(id)];
}

double Sample::cdf(double x) const {
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

}  // namespace moche
