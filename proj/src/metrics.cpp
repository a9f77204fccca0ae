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

#include "moche/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>

#include "moche/error.hpp"
#include "moche/kstest.hpp"
#include "moche/oracle.hpp"

namespace moche {

const char* method_name(Method method) {
  switch (method) {
    case Method::kMoche:
      return "moche";
    case Method::kGreedy:
      return "greedy";
    case Method::kBruteForce:
      return "brute_force";
  }
  return "unknown";
}

double rmse(const Instance& instance, std::span<const int> removed_ids) {
  std::vector<double> residual = residual_values(instance, removed_ids);
  if (residual.empty()) {
    fail(Errc::kRemovedEverything, "subset removes the whole test sample");
  }
  std::sort(residual.begin(), residual.end());
  const std::vector<double>& ref = instance.reference().sorted();
  const double n = static_cast<double>(ref.size());
  const double m = static_cast<double>(residual.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sum = 0.0;
  int points = 0;
  while (i < ref.size() || j < residual.size()) {
    double x;
    if (j >= residual.size()) {
      x = ref[i];
    } else if (i >= ref.size()) {
      x = residual[j];
    } else {
      x = std::min(ref[i], residual[j]);
    }
    while (i < ref.size() && ref[i] == x) ++i;
    while (j < residual.size() && residual[j] == x) ++j;
    const double gap =
        static_cast<double>(i) / n - static_cast<double>(j) / m;
    sum += gap * gap;
    ++points;
  }
  return std::sqrt(sum / points);
}

ComparisonRow compare_methods(const Instance& instance,
                              const PreferenceList& preference,
                              const std::vector<Method>& methods,
                              int oracle_cap) {
  ComparisonRow row;
  row.n = instance.n();
  row.m = instance.m();
  row.q = instance.q();
  row.statistic = instance.verdict().statistic;
  row.threshold = instance.verdict().threshold;
  row.rmse_before = rmse(instance, {});

  for (Method method : methods) {
    MethodOutcome outcome;
    outcome.method = method_name(method);
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (method) {
        case Method::kMoche: {
          const Explanation explanation =
              most_comprehensible(instance, preference);
          outcome.points = explanation.points;
          outcome.size = explanation.size;
          outcome.size_lower_bound = explanation.size_lower_bound;
          outcome.candidate_checks = explanation.candidate_checks;
          break;
        }
        case Method::kGreedy: {
          const OracleResult greedy = greedy_baseline(instance, preference);
          outcome.points = greedy.points;
          outcome.size = greedy.size;
          break;
        }
        case Method::kBruteForce: {
          const OracleResult brute =
              brute_force_explanation(instance, preference, oracle_cap);
          outcome.points = brute.points;
          outcome.size = brute.size;
          break;
        }
      }
      outcome.ok = true;
    } catch (const Error& error) {
      outcome.error = errc_name(error.code());
    }
    outcome.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (outcome.ok) {
      outcome.rmse_after = rmse(instance, outcome.points);
      const Sample residual(residual_values(instance, outcome.points));
      outcome.reversed =
          !ks_test(instance.reference(), residual, instance.alpha()).failed;
    }
    row.methods.push_back(std::move(outcome));
  }

  int best = std::numeric_limits<int>::max();
  for (const MethodOutcome& outcome : row.methods) {
    if (outcome.ok) best = std::min(best, outcome.size);
  }
  for (MethodOutcome& outcome : row.methods) {
    outcome.smallest = outcome.ok && outcome.size == best ? 1 : 0;
  }
  return row;
}

BatchAggregate aggregate_rows(const std::vector<ComparisonRow>& rows) {
  BatchAggregate out;
  for (const ComparisonRow& row : rows) {
    for (const MethodOutcome& outcome : row.methods) {
      MethodAggregate& agg = out.by_method[outcome.method];
      ++agg.rows;
      agg.runtime_sum += outcome.runtime_seconds;
      if (!outcome.ok) {
        ++agg.errors;
        continue;
      }
      if (outcome.reversed) ++agg.reversed;
      agg.smallest_sum += outcome.smallest;
      ++agg.size_histogram[outcome.size];
      if (outcome.size_lower_bound >= 0) {
        ++out.size_gap_histogram[outcome.size - outcome.size_lower_bound];
      }
    }
  }
  return out;
}

}  // namespace moche
