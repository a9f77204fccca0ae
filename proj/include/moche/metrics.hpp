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

#ifndef MOCHE_METRICS_HPP_
#define MOCHE_METRICS_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "moche/explainer.hpp"
#include "moche/instance.hpp"

namespace moche {

enum class Method { kMoche, kGreedy, kBruteForce };

const char* method_name(Method method);

// Root-mean-square distance between the reference CDF and the CDF of the test
// sample with `removed_ids` taken out, evaluated at the distinct values of
// R union residual. Lower is closer. Throws RemovedEverything if nothing
// remains.
double rmse(const Instance& instance, std::span<const int> removed_ids);

// One method's outcome on one instance. `ok` false means the method raised;
// `error` then holds the error name and the numeric fields are meaningless.
struct MethodOutcome {
  std::string method;
  bool ok = false;
  std::string error;
  std::vector<int> points;
  int size = 0;
  int size_lower_bound = -1;   // explanation search only
  int candidate_checks = -1;   // explanation search only
  double rmse_after = 0.0;
  bool reversed = false;       // direct re-test of the residual passes
  int smallest = 0;            // 1 iff no competing method found smaller
  double runtime_seconds = 0.0;
};

struct ComparisonRow {
  int n = 0;
  int m = 0;
  int q = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  double rmse_before = 0.0;
  std::vector<MethodOutcome> methods;
};

// Runs the requested methods on one failed instance under one preference
// order, timing each, re-testing each result directly and filling the
// comparison metrics. Method errors become per-method failure records, they
// do not abort the row.
ComparisonRow compare_methods(const Instance& instance,
                              const PreferenceList& preference,
                              const std::vector<Method>& methods,
                              int oracle_cap = 20);

struct MethodAggregate {
  int rows = 0;
  int reversed = 0;
  int errors = 0;
  double smallest_sum = 0.0;
  double runtime_sum = 0.0;
  std::map<int, int> size_histogram;

  double reverse_factor() const {
    return rows == 0 ? 0.0 : static_cast<double>(reversed) / rows;
  }
  double mean_smallest() const {
    return rows == 0 ? 0.0 : smallest_sum / rows;
  }
  double mean_runtime_seconds() const {
    return rows == 0 ? 0.0 : runtime_sum / rows;
  }
};

struct BatchAggregate {
  std::map<std::string, MethodAggregate> by_method;
  // Histogram of (found size - lower bound) over successful size searches.
  std::map<int, int> size_gap_histogram;
};

BatchAggregate aggregate_rows(const std::vector<ComparisonRow>& rows);

}  // namespace moche

#endif  // MOCHE_METRICS_HPP_
