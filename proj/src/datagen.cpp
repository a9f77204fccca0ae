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

#include "moche/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "moche/error.hpp"
#include "moche/kstest.hpp"

namespace moche {

namespace {

// splitmix64 finalizer; decorrelates nearby (seed, stream) pairs.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  return Rng(mix64(mix64(seed) ^ stream));
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

double Rng::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - next_unit();  // (0, 1]; keeps log finite
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  const std::uint64_t limit = ~0ULL - ~0ULL % bound;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return draw % bound;
}

std::vector<int> Rng::permutation(int size) {
  std::vector<int> out(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) out[static_cast<std::size_t>(i)] = i;
  for (int i = size - 1; i > 0; --i) {
    const int j = static_cast<int>(
        next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(out[static_cast<std::size_t>(i)],
              out[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<WindowPair> sliding_windows(std::span<const double> series,
                                        int window, int stride) {
  if (window < 2) {
    fail(Errc::kInvalidWindow,
         "window must be at least 2, got " + std::to_string(window));
  }
  if (stride < 1) {
    fail(Errc::kInvalidWindow,
         "stride must be at least 1, got " + std::to_string(stride));
  }
  const std::size_t len = series.size();
  if (len < 2 * static_cast<std::size_t>(window)) {
    fail(Errc::kSeriesTooShort,
         "series of length " + std::to_string(len) + " cannot host one " +
             std::to_string(window) + "+" + std::to_string(window) +
             " window pair");
  }
  std::vector<WindowPair> out;
  const std::size_t w = static_cast<std::size_t>(window);
  for (std::size_t offset = 0; offset + 2 * w <= len;
       offset += static_cast<std::size_t>(stride)) {
    WindowPair pair;
    pair.offset = static_cast<int>(offset);
    pair.reference.assign(series.begin() + offset, series.begin() + offset + w);
    pair.test.assign(series.begin() + offset + w,
                     series.begin() + offset + 2 * w);
    out.push_back(std::move(pair));
  }
  return out;
}

SynthPair synth_drift(const SynthSpec& spec) {
  if (spec.window < 2) {
    fail(Errc::kInvalidWindow,
         "window must be at least 2, got " + std::to_string(spec.window));
  }
  if (!(spec.drift_fraction >= 0.0) || !(spec.drift_fraction <= 1.0)) {
    fail(Errc::kInvalidFraction,
         "drift fraction must lie in [0, 1], got " +
             std::to_string(spec.drift_fraction));
  }
  Rng rng(spec.seed);
  SynthPair pair;
  pair.effective_seed = spec.seed;
  const std::size_t w = static_cast<std::size_t>(spec.window);
  pair.reference.resize(w);
  pair.test.resize(w);
  for (double& x : pair.reference) x = rng.next_normal();
  for (double& x : pair.test) x = rng.next_normal();

  const int drifted = static_cast<int>(
      std::llround(spec.drift_fraction * spec.window));
  std::vector<int> positions(w);
  for (std::size_t i = 0; i < w; ++i) positions[i] = static_cast<int>(i);
  for (int i = 0; i < drifted; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) +
        rng.next_below(w - static_cast<std::size_t>(i));
    std::swap(positions[static_cast<std::size_t>(i)], positions[j]);
  }
  pair.replaced.assign(positions.begin(), positions.begin() + drifted);
  std::sort(pair.replaced.begin(), pair.replaced.end());
  for (int pos : pair.replaced) {
    pair.test[static_cast<std::size_t>(pos)] = rng.next_uniform(-7.0, 7.0);
  }
  return pair;
}

SynthPair synth_drift_failing(const SynthSpec& spec, double alpha,
                              int max_retries) {
  critical_coefficient(alpha);  // validate up front
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    SynthSpec attempt_spec = spec;
    attempt_spec.seed = attempt == 0
                            ? spec.seed
                            : Rng::derive(spec.seed,
                                          static_cast<std::uint64_t>(attempt))
                                  .next_u64();
    SynthPair pair = synth_drift(attempt_spec);
    const KsVerdict verdict =
        ks_test(Sample(pair.reference), Sample(pair.test), alpha);
    if (verdict.failed) {
      pair.retries = attempt;
      return pair;
    }
  }
  fail(Errc::kRetriesExhausted,
       "no failing pair within " + std::to_string(max_retries) +
           " redraws of seed " + std::to_string(spec.seed));
}

SmallInstance random_failed_instance(const SmallInstanceSpec& spec,
                                     std::uint64_t index) {
  Rng rng = Rng::derive(spec.seed, index);
  SmallInstance out;
  const int sizes = spec.max_size - spec.min_size + 1;
  while (true) {
    const int n =
        spec.min_size + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(sizes)));
    const int m =
        spec.min_size + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(sizes)));
    out.alpha = spec.alphas[static_cast<std::size_t>(
        rng.next_below(spec.alphas.size()))];

    // Independently skewed weights per sample make disagreement, and with it
    // failing tests, common even at these sizes.
    std::vector<double> ref_weight(static_cast<std::size_t>(spec.alphabet));
    std::vector<double> test_weight(static_cast<std::size_t>(spec.alphabet));
    for (double& weight : ref_weight) {
      weight = -std::log(1.0 - rng.next_unit());
    }
    for (double& weight : test_weight) {
      weight = -std::log(1.0 - rng.next_unit());
    }
    auto draw = [&](const std::vector<double>& weights) {
      double total = 0.0;
      for (double weight : weights) total += weight;
      double at = rng.next_unit() * total;
      for (std::size_t value = 0; value < weights.size(); ++value) {
        at -= weights[value];
        if (at < 0.0) return static_cast<double>(value);
      }
      return static_cast<double>(weights.size() - 1);
    };
    out.reference.clear();
    out.test.clear();
    for (int i = 0; i < n; ++i) out.reference.push_back(draw(ref_weight));
    for (int i = 0; i < m; ++i) out.test.push_back(draw(test_weight));

    const KsVerdict verdict =
        ks_test(Sample(out.reference), Sample(out.test), out.alpha);
    if (verdict.failed) break;
    ++out.redraws;
  }
  out.preference = rng.permutation(static_cast<int>(out.test.size()));
  return out;
}

}  // namespace moche
