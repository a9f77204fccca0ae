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

#include <vector>

#include "doctest.h"
#include "moche/error.hpp"
#include "testutil.hpp"

using moche::ComparisonRow;
using moche::Errc;
using moche::Instance;
using moche::Method;
using moche::MethodOutcome;
using moche::PreferenceList;
using moche::Sample;
using moche_test::fails_with;
using moche_test::golden_instance;

TEST_CASE("rmse on the worked instance") {
  const Instance instance = golden_instance();

  // Before any removal the CDFs disagree at 12, 13 and 14.
  CHECK(moche::rmse(instance, {}) ==
        doctest::Approx(0.414578098794425).epsilon(1e-12));

  // After removing {12, 13} only the value 13 still separates them:
  // sqrt(0.25 / 3).
  const std::vector<int> low_pair = {2, 0};
  CHECK(moche::rmse(instance, low_pair) ==
        doctest::Approx(0.28867513459481287).epsilon(1e-12));
}

TEST_CASE("rmse is zero for matching multisets and guards emptiness") {
  const Instance instance = moche::build_instance(
      Sample({1.0, 2.0}), Sample({1.0, 2.0, 3.0}), 0.05);
  const std::vector<int> third = {2};
  CHECK(moche::rmse(instance, third) == doctest::Approx(0.0));

  const std::vector<int> everything = {0, 1, 2};
  CHECK(fails_with(Errc::kRemovedEverything,
                   [&] { moche::rmse(instance, everything); }));
}

TEST_CASE("method comparison on the worked instance") {
  const Instance instance = golden_instance();
  const PreferenceList preference({3, 2, 1, 0});
  const ComparisonRow row = compare_methods(
      instance, preference,
      {Method::kMoche, Method::kGreedy, Method::kBruteForce});

  CHECK(row.n == 8);
  CHECK(row.m == 4);
  CHECK(row.q == 4);
  CHECK(row.statistic == doctest::Approx(0.75));
  CHECK(row.rmse_before == doctest::Approx(0.414578098794425));
  REQUIRE(row.methods.size() == 3);

  const MethodOutcome& mine = row.methods[0];
  CHECK(mine.method == "moche");
  CHECK(mine.ok);
  CHECK(mine.size == 2);
  CHECK(mine.size_lower_bound == 2);
  CHECK(mine.points == std::vector<int>{2, 1});
  CHECK(mine.reversed);
  CHECK(mine.smallest == 1);
  CHECK(mine.rmse_after == doctest::Approx(0.28867513459481287));

  const MethodOutcome& greedy = row.methods[1];
  CHECK(greedy.method == "greedy");
  CHECK(greedy.ok);
  CHECK(greedy.size == 3);
  CHECK(greedy.reversed);
  CHECK(greedy.smallest == 0);

  const MethodOutcome& brute = row.methods[2];
  CHECK(brute.method == "brute_force");
  CHECK(brute.ok);
  CHECK(brute.size == 2);
  CHECK(brute.points == mine.points);
  CHECK(brute.smallest == 1);
}

TEST_CASE("method errors become per-method records") {
  const Instance instance = golden_instance();
  const PreferenceList preference({3, 2, 1, 0});
  const ComparisonRow row = compare_methods(
      instance, preference, {Method::kMoche, Method::kBruteForce},
      /*oracle_cap=*/2);
  REQUIRE(row.methods.size() == 2);
  CHECK(row.methods[0].ok);
  CHECK_FALSE(row.methods[1].ok);
  CHECK(row.methods[1].error == "InstanceTooLarge");
  // The failing method drops out of the smallest-size comparison.
  CHECK(row.methods[0].smallest == 1);
}

TEST_CASE("aggregation over comparison rows") {
  const Instance instance = golden_instance();
  const PreferenceList preference({3, 2, 1, 0});
  std::vector<ComparisonRow> rows;
  rows.push_back(compare_methods(
      instance, preference,
      {Method::kMoche, Method::kGreedy, Method::kBruteForce}));
  rows.push_back(compare_methods(instance, PreferenceList({0, 1, 2, 3}),
                                 {Method::kMoche, Method::kGreedy}));

  const moche::BatchAggregate aggregate = moche::aggregate_rows(rows);
  REQUIRE(aggregate.by_method.count("moche") == 1);
  REQUIRE(aggregate.by_method.count("greedy") == 1);
  REQUIRE(aggregate.by_method.count("brute_force") == 1);

  const moche::MethodAggregate& mine = aggregate.by_method.at("moche");
  CHECK(mine.rows == 2);
  CHECK(mine.errors == 0);
  CHECK(mine.reverse_factor() == doctest::Approx(1.0));
  CHECK(mine.mean_smallest() == doctest::Approx(1.0));
  CHECK(mine.size_histogram.at(2) == 2);

  // Natural order removes {13, 13}, a greedy prefix of length 2, so greedy
  // is smallest in the second row only.
  const moche::MethodAggregate& greedy = aggregate.by_method.at("greedy");
  CHECK(greedy.rows == 2);
  CHECK(greedy.mean_smallest() == doctest::Approx(0.5));

  // Both rows ran the size search: gap k - k_hat was 0 both times.
  CHECK(aggregate.size_gap_histogram.at(0) == 2);
}
