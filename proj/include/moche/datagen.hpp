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

#ifndef MOCHE_DATAGEN_HPP_
#define MOCHE_DATAGEN_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace moche {

// Identifies the exact random recipe below. Bump the suffix on any change
// that alters the produced streams; reports embed this so archived seeds stay
// meaningful.
inline constexpr const char* kRngAlgorithmId = "mt19937_64/box-muller/v1";

// Deterministic random source: a seeded mt19937_64 (bit-exact across
// platforms by the C++ standard) with hand-rolled output transforms, so equal
// seeds give equal values everywhere. std::normal_distribution and friends
// are deliberately avoided; their streams vary across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent substream `stream` of a master seed.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit();

  double next_uniform(double lo, double hi);

  // Standard normal via the Box-Muller transform, pair-cached.
  double next_normal();

  // Uniform integer on [0, bound), bound >= 1, by rejection.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform random permutation of 0..size-1 (Fisher-Yates).
  std::vector<int> permutation(int size);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

struct WindowPair {
  int offset = 0;  // start of the reference window in the series
  std::vector<double> reference;
  std::vector<double> test;  // the `window` points right after the reference
};

// Cuts a series into (reference, test) window pairs: at each offset 0,
// stride, 2*stride, ... the reference window covers `window` points and the
// test window the `window` points immediately after. Pairs that would run
// past the end are dropped. Throws InvalidWindow (window < 2 or stride < 1)
// and SeriesTooShort (fewer than 2*window points).
std::vector<WindowPair> sliding_windows(std::span<const double> series,
                                        int window, int stride);

struct SynthSpec {
  int window = 1000;            // points per sample
  double drift_fraction = 0.0;  // fraction of test points replaced
  std::uint64_t seed = 0;
};

struct SynthPair {
  std::vector<double> reference;  // window draws from N(0, 1)
  std::vector<double> test;       // same, with some points replaced
  std::vector<int> replaced;      // replaced positions, increasing
  std::uint64_t effective_seed = 0;
  int retries = 0;  // extra draws spent when a failing pair was required
};

// Synthetic drift pair: reference and test are i.i.d. standard normal,
// then round(drift_fraction * window) distinct test positions are replaced
// with draws from Uniform[-7, 7]. Fully determined by the spec. Throws
// InvalidWindow and InvalidFraction (outside [0, 1]).
SynthPair synth_drift(const SynthSpec& spec);

// Redraws with derived sub-seeds until the pair fails the test at
// significance alpha. Throws RetriesExhausted after max_retries redraws.
SynthPair synth_drift_failing(const SynthSpec& spec, double alpha,
                              int max_retries = 64);

struct SmallInstanceSpec {
  int min_size = 3;   // smallest n and m
  int max_size = 12;  // largest n and m
  int alphabet = 6;   // distinct values to draw from
  std::vector<double> alphas = {0.05, 0.1, 0.2};
  std::uint64_t seed = 0;
};

struct SmallInstance {
  std::vector<double> reference;
  std::vector<double> test;
  double alpha = 0.05;
  std::vector<int> preference;  // random permutation of test point ids
  int redraws = 0;
};

// Random small instance that fails the test, for cross-checking against
// exhaustive search: sizes uniform in [min_size, max_size], values drawn from
// a small alphabet with independently skewed weights per sample so failures
// are common. Deterministic in (spec.seed, index).
SmallInstance random_failed_instance(const SmallInstanceSpec& spec,
                                     std::uint64_t index);

}  // namespace moche

#endif  // MOCHE_DATAGEN_HPP_
