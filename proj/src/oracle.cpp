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

#include "moche/oracle.hpp"

#include <string>

#include "moche/error.hpp"
#include "moche/kstest.hpp"

namespace moche {

namespace {

void check_enumerable(const Instance& instance, int max_size) {
  if (instance.m() > max_size) {
    fail(Errc::kInstanceTooLarge,
         "exhaustive search over " + std::to_string(instance.m()) +
             " points refused (cap " + std::to_string(max_size) + ")");
  }
}

// Removal of the ids selected in `ranks` (given as ranks) reverses the test?
bool removal_passes(const Instance& instance, const PreferenceList& preference,
                    const std::vector<int>& ranks) {
  std::vector<int> ids;
  ids.reserve(ranks.size());
  for (int rank : ranks) ids.push_back(preference.at(rank));
  const Sample residual(residual_values(instance, ids));
  return !ks_test(instance.reference(), residual, instance.alpha()).failed;
}

// Enumerates rank combinations of size h in lexicographic order, invoking
// `visit` until it returns true. Returns whether any combination was accepted.
template <typename Visit>
bool first_combination(int m, int h, Visit visit) {
  std::vector<int> combo(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) combo[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (visit(combo)) return true;
    int i = h - 1;
    while (i >= 0 &&
           combo[static_cast<std::size_t>(i)] == m - h + i) {
      --i;
    }
    if (i < 0) return false;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < h; ++j) {
      combo[static_cast<std::size_t>(j)] =
          combo[static_cast<std::size_t>(j) - 1] + 1;
    }
  }
}

}  // namespace

OracleResult brute_force_explanation(const Instance& instance,
                                     const PreferenceList& preference,
                                     int max_size) {
  check_enumerable(instance, max_size);
  if (!instance.verdict().failed) {
    fail(Errc::kTestNotFailed, "the test already passes; nothing to explain");
  }
  if (preference.size() != instance.m()) {
    fail(Errc::kInvalidPreference,
         "preference list ranks " + std::to_string(preference.size()) +
             " points, test sample has " + std::to_string(instance.m()));
  }
  OracleResult result;
  for (int h = 1; h <= instance.m() - 1; ++h) {
    std::vector<int> found;
    const bool hit = first_combination(
        instance.m(), h, [&](const std::vector<int>& combo) {
          ++result.subsets_examined;
          if (removal_passes(instance, preference, combo)) {
            found = combo;
            return true;
          }
          return false;
        });
    if (hit) {
      result.size = h;
      result.points.reserve(found.size());
      for (int rank : found) result.points.push_back(preference.at(rank));
      return result;
    }
  }
  fail(Errc::kNoExplanationExists,
       "no proper subset of the test sample can reverse the test");
}

bool brute_force_exists(const Instance& instance, int h, int max_size) {
  check_enumerable(instance, max_size);
  if (h < 0 || h > instance.m() - 1) {
    fail(Errc::kInvalidSize, "subset size " + std::to_string(h) +
                                 " outside [0, " +
                                 std::to_string(instance.m() - 1) + "]");
  }
  std::vector<int> identity(static_cast<std::size_t>(instance.m()));
  for (int i = 0; i < instance.m(); ++i) {
    identity[static_cast<std::size_t>(i)] = i;
  }
  const PreferenceList natural(identity);
  if (h == 0) return !instance.verdict().failed;
  return first_combination(instance.m(), h,
                           [&](const std::vector<int>& combo) {
                             return removal_passes(instance, natural, combo);
                           });
}

OracleResult greedy_baseline(const Instance& instance,
                             const PreferenceList& preference) {
  if (!instance.verdict().failed) {
    fail(Errc::kTestNotFailed, "the test already passes; nothing to explain");
  }
  if (preference.size() != instance.m()) {
    fail(Errc::kInvalidPreference,
         "preference list ranks " + std::to_string(preference.size()) +
             " points, test sample has " + std::to_string(instance.m()));
  }
  OracleResult result;
  std::vector<int> ids;
  for (int len = 1; len <= instance.m() - 1; ++len) {
    ids.push_back(preference.at(len - 1));
    ++result.subsets_examined;
    const Sample residual(residual_values(instance, ids));
    if (!ks_test(instance.reference(), residual, instance.alpha()).failed) {
      result.size = len;
      result.points = ids;
      return result;
    }
  }
  fail(Errc::kNoExplanationExists,
       "no prefix of the preference order reverses the test");
}

}  // namespace moche
