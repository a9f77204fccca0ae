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

#ifndef MOCHE_ORACLE_HPP_
#define MOCHE_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "moche/explainer.hpp"
#include "moche/instance.hpp"

namespace moche {

struct OracleResult {
  std::vector<int> points;  // selected test point ids, most preferred first
  int size = 0;
  std::int64_t subsets_examined = 0;
};

// Reference answer by exhaustive search: enumerates subsets of the test
// sample in (size, then lexicographic-by-rank) order and returns the first
// whose removal makes a directly re-run test pass. Deliberately shares no
// machinery with the two-phase algorithm beyond the instance itself.
// Exponential; throws InstanceTooLarge if m > max_size, TestNotFailed,
// NoExplanationExists.
OracleResult brute_force_explanation(const Instance& instance,
                                     const PreferenceList& preference,
                                     int max_size = 20);

// True iff some size-h subset's removal makes the test pass, decided by the
// same exhaustive enumeration. Independent check of the feasibility math.
bool brute_force_exists(const Instance& instance, int h, int max_size = 20);

// Baseline: removes the shortest prefix of the preference order whose removal
// makes the test pass, re-running the full test per prefix length. Its result
// is reverse-guaranteed but generally larger than the minimum.
OracleResult greedy_baseline(const Instance& instance,
                             const PreferenceList& preference);

}  // namespace moche

#endif  // MOCHE_ORACLE_HPP_
