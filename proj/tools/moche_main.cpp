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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moche/csv.hpp"
#include "moche/datagen.hpp"
#include "moche/error.hpp"
#include "moche/explainer.hpp"
#include "moche/instance.hpp"
#include "moche/kstest.hpp"
#include "moche/metrics.hpp"
#include "moche/oracle.hpp"
#include "moche/sizer.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitTestFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitTestNotFailed = 3;
constexpr int kExitVerificationFailure = 4;

// 2 / e^2; above this significance an explanation is no longer guaranteed.
constexpr double kExistenceAlphaBound = 0.2706705664732254;

int exit_code_for(const moche::Error& error) {
  switch (error.code()) {
    case moche::Errc::kTestNotFailed:
      return kExitTestNotFailed;
    case moche::Errc::kInternalVerificationFailure:
    case moche::Errc::kRetriesExhausted:
      return kExitVerificationFailure;
    default:
      return kExitInputError;
  }
}

void warn_alpha(double alpha) {
  if (alpha > kExistenceAlphaBound) {
    std::cerr << "warning: alpha " << alpha
              << " exceeds 2/e^2 ~ 0.2707; an explanation may not exist\n";
  }
}

ordered_json report_header(const std::string& command) {
  ordered_json report;
  report["schema_version"] = 1;
  report["tool"] = "moche";
  report["command"] = command;
  return report;
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    moche::fail(moche::Errc::kParseError,
                "cannot open '" + out_path + "' for writing");
  }
  out << text;
  if (!out) {
    moche::fail(moche::Errc::kParseError, "write to '" + out_path + "' failed");
  }
}

void emit_report(const ordered_json& report, const std::string& out_path) {
  emit_text(report.dump(2) + "\n", out_path);
}

moche::Sample sample_from_csv(const std::string& path) {
  return moche::Sample(moche::read_numeric_csv(path).values);
}

// Turns the configured preference source into a strict permutation.
// Score ties keep input order (stable sort), so equal scores degrade to the
// natural order deterministically.
moche::PreferenceList build_preference(const moche::Instance& instance,
                                       const std::string& rank_path,
                                       bool use_scores,
                                       const moche::NumericCsv& test_csv) {
  if (!rank_path.empty()) {
    std::vector<int> order = moche::read_rank_file(rank_path);
    if (static_cast<int>(order.size()) != instance.m()) {
      moche::fail(moche::Errc::kInvalidPreference,
                  "rank file lists " + std::to_string(order.size()) +
                      " points, test sample has " +
                      std::to_string(instance.m()));
    }
    return moche::PreferenceList(std::move(order));
  }
  std::vector<int> order(static_cast<std::size_t>(instance.m()));
  std::iota(order.begin(), order.end(), 0);
  if (use_scores) {
    if (!test_csv.has_scores()) {
      moche::fail(moche::Errc::kInvalidPreference,
                  "score-column preference needs a second column in the "
                  "test CSV");
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return test_csv.scores[static_cast<std::size_t>(a)] >
             test_csv.scores[static_cast<std::size_t>(b)];
    });
  }
  return moche::PreferenceList(std::move(order));
}

ordered_json verdict_json(const moche::KsVerdict& verdict) {
  ordered_json out;
  out["statistic"] = verdict.statistic;
  out["threshold"] = verdict.threshold;
  out["failed"] = verdict.failed;
  return out;
}

int run_test(const std::string& ref_path, const std::string& test_path,
             double alpha, const std::string& out_path) {
  warn_alpha(alpha);
  const moche::Sample reference = sample_from_csv(ref_path);
  const moche::Sample test = sample_from_csv(test_path);
  const moche::KsVerdict verdict = moche::ks_test(reference, test, alpha);

  ordered_json report = report_header("test");
  report["params"] = {{"reference", ref_path},
                      {"test", test_path},
                      {"alpha", alpha}};
  report["result"] = verdict_json(verdict);
  report["result"]["n"] = reference.size();
  report["result"]["m"] = test.size();
  emit_report(report, out_path);
  return verdict.failed ? kExitTestFailed : kExitPass;
}

int run_explain(const std::string& ref_path, const std::string& test_path,
                double alpha, const std::string& rank_path, bool use_scores,
                bool timings, const std::string& out_path) {
  warn_alpha(alpha);
  const moche::NumericCsv test_csv = moche::read_numeric_csv(test_path);
  moche::Instance instance = moche::build_instance(
      sample_from_csv(ref_path), moche::Sample(test_csv.values), alpha);
  const moche::PreferenceList preference =
      build_preference(instance, rank_path, use_scores, test_csv);

  const auto t0 = std::chrono::steady_clock::now();
  const moche::SizeResult size = moche::explanation_size(instance);
  const auto t1 = std::chrono::steady_clock::now();
  const moche::Explanation explanation =
      moche::most_comprehensible(instance, preference, size);
  const auto t2 = std::chrono::steady_clock::now();

  const moche::KsVerdict residual = moche::ks_test(
      instance.reference(),
      moche::Sample(moche::residual_values(instance, explanation.points)),
      alpha);

  ordered_json report = report_header("explain");
  std::string pref_name = "natural";
  if (!rank_path.empty()) {
    pref_name = "rank-file:" + rank_path;
  } else if (use_scores) {
    pref_name = "score-column";
  }
  report["params"] = {{"reference", ref_path},
                      {"test", test_path},
                      {"alpha", alpha},
                      {"preference", pref_name}};
  report["test"] = verdict_json(instance.verdict());
  report["test"]["n"] = instance.n();
  report["test"]["m"] = instance.m();
  report["test"]["q"] = instance.q();

  ordered_json points = ordered_json::array();
  for (int id : explanation.points) {
    ordered_json point;
    point["index"] = id;
    point["value"] = instance.test().value(id);
    point["rank"] = preference.rank_of(id);
    points.push_back(std::move(point));
  }
  report["explanation"] = {{"k", explanation.size},
                           {"k_hat", explanation.size_lower_bound},
                           {"size_scans", explanation.size_scans},
                           {"candidate_checks", explanation.candidate_checks},
                           {"verified", explanation.verified},
                           {"points", points}};
  report["residual_test"] = verdict_json(residual);
  report["rmse"] = {{"before", moche::rmse(instance, {})},
                    {"after", moche::rmse(instance, explanation.points)}};
  if (timings) {
    report["timing_seconds"] = {
        {"phase1", std::chrono::duration<double>(t1 - t0).count()},
        {"phase2", std::chrono::duration<double>(t2 - t1).count()}};
  }
  emit_report(report, out_path);
  return kExitPass;
}

struct BatchItem {
  int row = 0;
  int offset = 0;
  moche::Instance instance;
  moche::PreferenceList preference;
};

ordered_json outcome_json(const moche::MethodOutcome& outcome, bool timings) {
  ordered_json out;
  out["method"] = outcome.method;
  out["status"] = outcome.ok ? "ok" : "error";
  if (!outcome.ok) {
    out["error"] = outcome.error;
    if (timings) out["runtime_seconds"] = outcome.runtime_seconds;
    return out;
  }
  out["size"] = outcome.size;
  if (outcome.size_lower_bound >= 0) {
    out["k_hat"] = outcome.size_lower_bound;
    out["size_gap"] = outcome.size - outcome.size_lower_bound;
    out["candidate_checks"] = outcome.candidate_checks;
  }
  out["points"] = outcome.points;
  out["rmse_after"] = outcome.rmse_after;
  out["reversed"] = outcome.reversed;
  out["is_smallest"] = outcome.smallest;
  if (timings) out["runtime_seconds"] = outcome.runtime_seconds;
  return out;
}

std::string batch_csv(const std::vector<BatchItem>& items,
                      const std::vector<moche::ComparisonRow>& rows,
                      bool timings) {
  std::ostringstream out;
  out << "row,offset,n,m,q,statistic,threshold,method,status,error,size,"
         "k_hat,size_gap,candidate_checks,rmse_before,rmse_after,reversed,"
         "is_smallest,runtime_seconds\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const moche::MethodOutcome& outcome : rows[r].methods) {
      out << items[r].row << ',' << items[r].offset << ',' << rows[r].n << ','
          << rows[r].m << ',' << rows[r].q << ','
          << moche::format_double(rows[r].statistic) << ','
          << moche::format_double(rows[r].threshold) << ',' << outcome.method
          << ',' << (outcome.ok ? "ok" : "error") << ',' << outcome.error
          << ',';
      if (outcome.ok) out << outcome.size;
      out << ',';
      if (outcome.ok && outcome.size_lower_bound >= 0) {
        out << outcome.size_lower_bound << ','
            << (outcome.size - outcome.size_lower_bound) << ','
            << outcome.candidate_checks << ',';
      } else {
        out << ",,,";
      }
      out << moche::format_double(rows[r].rmse_before) << ',';
      if (outcome.ok) {
        out << moche::format_double(outcome.rmse_after) << ','
            << (outcome.reversed ? 1 : 0) << ',' << outcome.smallest << ',';
      } else {
        out << ",,,";
      }
      if (timings) out << moche::format_double(outcome.runtime_seconds);
      out << '\n';
    }
  }
  return out.str();
}

int run_batch(const std::string& series_path, int window, int stride,
              double alpha, const std::string& preference_mode,
              std::uint64_t seed, const std::vector<std::string>& method_names,
              int oracle_cap, int threads, bool timings,
              const std::string& format, const std::string& out_path) {
  warn_alpha(alpha);
  std::vector<moche::Method> methods;
  for (const std::string& name : method_names) {
    if (name == "moche") {
      methods.push_back(moche::Method::kMoche);
    } else if (name == "greedy") {
      methods.push_back(moche::Method::kGreedy);
    } else if (name == "oracle" || name == "brute_force") {
      methods.push_back(moche::Method::kBruteForce);
    } else {
      moche::fail(moche::Errc::kParseError,
                  "unknown method '" + name +
                      "' (expected moche, greedy or oracle)");
    }
  }

  const moche::NumericCsv series = moche::read_numeric_csv(series_path);
  const std::vector<moche::WindowPair> pairs =
      moche::sliding_windows(series.values, window, stride);

  std::vector<BatchItem> items;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    moche::Instance instance =
        moche::build_instance(moche::Sample(pairs[i].reference),
                              moche::Sample(pairs[i].test), alpha);
    if (!instance.verdict().failed) continue;
    const int m = instance.m();
    std::vector<int> order;
    if (preference_mode == "random") {
      order = moche::Rng::derive(seed, i).permutation(m);
    } else {
      order.resize(static_cast<std::size_t>(m));
      std::iota(order.begin(), order.end(), 0);
    }
    items.push_back(BatchItem{static_cast<int>(items.size()),
                              pairs[i].offset, std::move(instance),
                              moche::PreferenceList(std::move(order))});
  }

  std::vector<moche::ComparisonRow> rows(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr worker_error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= items.size()) return;
      try {
        rows[index] = moche::compare_methods(
            items[index].instance, items[index].preference, methods,
            oracle_cap);
      } catch (...) {
        const std::lock_guard<std::mutex> hold(error_mutex);
        if (!worker_error) worker_error = std::current_exception();
      }
    }
  };
  const int pool = std::max(1, std::min<int>(threads,
                                             static_cast<int>(items.size())));
  if (pool <= 1 || items.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    for (int t = 0; t < pool; ++t) workers.emplace_back(work);
    for (std::thread& worker : workers) worker.join();
  }
  if (worker_error) std::rethrow_exception(worker_error);

  if (format == "csv") {
    emit_text(batch_csv(items, rows, timings), out_path);
    return kExitPass;
  }

  ordered_json report = report_header("batch");
  report["params"] = {{"series", series_path},
                      {"window", window},
                      {"stride", stride},
                      {"alpha", alpha},
                      {"preference", preference_mode},
                      {"methods", method_names},
                      {"oracle_cap", oracle_cap},
                      {"threads", pool}};
  if (preference_mode == "random") {
    report["params"]["seed"] = seed;
    report["params"]["rng"] = moche::kRngAlgorithmId;
  }
  report["windows"] = {{"total", pairs.size()}, {"failed", items.size()}};
  ordered_json rows_json = ordered_json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    ordered_json row;
    row["row"] = items[r].row;
    row["offset"] = items[r].offset;
    row["n"] = rows[r].n;
    row["m"] = rows[r].m;
    row["q"] = rows[r].q;
    row["statistic"] = rows[r].statistic;
    row["threshold"] = rows[r].threshold;
    row["rmse_before"] = rows[r].rmse_before;
    ordered_json method_json = ordered_json::array();
    for (const moche::MethodOutcome& outcome : rows[r].methods) {
      method_json.push_back(outcome_json(outcome, timings));
    }
    row["methods"] = std::move(method_json);
    rows_json.push_back(std::move(row));
  }
  report["rows"] = std::move(rows_json);

  const moche::BatchAggregate aggregate = moche::aggregate_rows(rows);
  ordered_json aggregates;
  for (const auto& [name, agg] : aggregate.by_method) {
    ordered_json entry;
    entry["rows"] = agg.rows;
    entry["errors"] = agg.errors;
    entry["reverse_factor"] = agg.reverse_factor();
    entry["ise"] = agg.mean_smallest();
    if (timings) entry["mean_runtime_seconds"] = agg.mean_runtime_seconds();
    ordered_json sizes;
    for (const auto& [size, count] : agg.size_histogram) {
      sizes[std::to_string(size)] = count;
    }
    entry["sizes"] = std::move(sizes);
    aggregates[name] = std::move(entry);
  }
  report["aggregates"] = {{"methods", std::move(aggregates)}};
  ordered_json gaps;
  for (const auto& [gap, count] : aggregate.size_gap_histogram) {
    gaps[std::to_string(gap)] = count;
  }
  report["aggregates"]["size_gap_histogram"] = std::move(gaps);
  emit_report(report, out_path);
  return kExitPass;
}

int run_synth(int window, double fraction, std::uint64_t seed, double alpha,
              bool require_fail, int max_retries, bool header,
              const std::string& ref_path, const std::string& test_path,
              const std::string& out_path) {
  warn_alpha(alpha);
  moche::SynthSpec spec;
  spec.window = window;
  spec.drift_fraction = fraction;
  spec.seed = seed;
  const moche::SynthPair pair =
      require_fail ? moche::synth_drift_failing(spec, alpha, max_retries)
                   : moche::synth_drift(spec);
  moche::write_value_csv(ref_path, pair.reference, header);
  moche::write_value_csv(test_path, pair.test, header);
  const moche::KsVerdict verdict = moche::ks_test(
      moche::Sample(pair.reference), moche::Sample(pair.test), alpha);

  ordered_json report = report_header("synth");
  report["params"] = {{"window", window},
                      {"fraction", fraction},
                      {"seed", seed},
                      {"alpha", alpha},
                      {"require_fail", require_fail},
                      {"rng", moche::kRngAlgorithmId}};
  report["result"] = {{"reference_file", ref_path},
                      {"test_file", test_path},
                      {"replaced", pair.replaced.size()},
                      {"effective_seed", pair.effective_seed},
                      {"retries", pair.retries}};
  report["result"]["test"] = verdict_json(verdict);
  emit_report(report, out_path);
  return kExitPass;
}

ordered_json oracle_side_json(const moche::Instance& instance,
                              const moche::PreferenceList& preference,
                              bool use_moche, int cap) {
  ordered_json out;
  try {
    if (use_moche) {
      const moche::Explanation explanation =
          moche::most_comprehensible(instance, preference);
      out["size"] = explanation.size;
      out["points"] = explanation.points;
    } else {
      const moche::OracleResult result =
          moche::brute_force_explanation(instance, preference, cap);
      out["size"] = result.size;
      out["points"] = result.points;
    }
  } catch (const moche::Error& error) {
    out["error"] = moche::errc_name(error.code());
  }
  return out;
}

// Both methods ran and agreed (same error counts as agreement).
bool methods_agree(const moche::Instance& instance,
                   const moche::PreferenceList& preference, int cap) {
  std::optional<std::vector<int>> moche_points;
  std::optional<std::vector<int>> brute_points;
  std::string moche_error;
  std::string brute_error;
  try {
    moche_points = moche::most_comprehensible(instance, preference).points;
  } catch (const moche::Error& error) {
    moche_error = moche::errc_name(error.code());
  }
  try {
    brute_points =
        moche::brute_force_explanation(instance, preference, cap).points;
  } catch (const moche::Error& error) {
    brute_error = moche::errc_name(error.code());
  }
  if (moche_points.has_value() != brute_points.has_value()) return false;
  if (!moche_points.has_value()) return moche_error == brute_error;
  return *moche_points == *brute_points;
}

struct ShrinkCase {
  std::vector<double> reference;
  std::vector<double> test;
  double alpha = 0.05;
  std::vector<int> preference;
};

bool still_mismatching(const ShrinkCase& candidate, int cap) {
  try {
    const moche::Instance instance =
        moche::build_instance(moche::Sample(candidate.reference),
                              moche::Sample(candidate.test), candidate.alpha);
    if (!instance.verdict().failed) return false;
    return !methods_agree(instance, moche::PreferenceList(candidate.preference),
                          cap);
  } catch (const moche::Error&) {
    return false;
  }
}

// Greedily drops test and reference points while the disagreement survives.
ShrinkCase shrink_mismatch(ShrinkCase repro, int cap) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t drop = 0; drop < repro.test.size(); ++drop) {
      if (repro.test.size() <= 2) break;
      ShrinkCase candidate = repro;
      candidate.test.erase(candidate.test.begin() +
                           static_cast<std::ptrdiff_t>(drop));
      candidate.preference.clear();
      for (int id : repro.preference) {
        if (id == static_cast<int>(drop)) continue;
        candidate.preference.push_back(id < static_cast<int>(drop) ? id
                                                                   : id - 1);
      }
      if (still_mismatching(candidate, cap)) {
        repro = std::move(candidate);
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (std::size_t drop = 0; drop < repro.reference.size(); ++drop) {
      if (repro.reference.size() <= 1) break;
      ShrinkCase candidate = repro;
      candidate.reference.erase(candidate.reference.begin() +
                                static_cast<std::ptrdiff_t>(drop));
      if (still_mismatching(candidate, cap)) {
        repro = std::move(candidate);
        improved = true;
        break;
      }
    }
  }
  return repro;
}

int run_oracle_check(int count, int min_size, int max_size, int alphabet,
                     const std::vector<double>& alphas, std::uint64_t seed,
                     int cap, const std::string& out_path) {
  if (max_size > cap) {
    moche::fail(moche::Errc::kInstanceTooLarge,
                "max size " + std::to_string(max_size) +
                    " exceeds the oracle cap " + std::to_string(cap));
  }
  if (min_size < 2 || max_size < min_size) {
    moche::fail(moche::Errc::kInvalidSize,
                "need 2 <= min size <= max size");
  }
  moche::SmallInstanceSpec spec;
  spec.min_size = min_size;
  spec.max_size = max_size;
  spec.alphabet = alphabet;
  spec.alphas = alphas;
  spec.seed = seed;

  for (int i = 0; i < count; ++i) {
    const moche::SmallInstance raw =
        random_failed_instance(spec, static_cast<std::uint64_t>(i));
    const moche::Instance instance = moche::build_instance(
        moche::Sample(raw.reference), moche::Sample(raw.test), raw.alpha);
    const moche::PreferenceList preference(raw.preference);
    if (methods_agree(instance, preference, cap)) continue;

    ShrinkCase repro{raw.reference, raw.test, raw.alpha, raw.preference};
    repro = shrink_mismatch(repro, cap);
    const moche::Instance small = moche::build_instance(
        moche::Sample(repro.reference), moche::Sample(repro.test),
        repro.alpha);
    const moche::PreferenceList small_pref(repro.preference);

    ordered_json report = report_header("oracle-check");
    report["status"] = "mismatch";
    report["instance_index"] = i;
    report["seed"] = seed;
    report["rng"] = moche::kRngAlgorithmId;
    report["reproduction"] = {{"reference", repro.reference},
                              {"test", repro.test},
                              {"alpha", repro.alpha},
                              {"preference", repro.preference}};
    report["moche"] = oracle_side_json(small, small_pref, true, cap);
    report["brute_force"] = oracle_side_json(small, small_pref, false, cap);
    emit_report(report, out_path);
    return kExitVerificationFailure;
  }

  ordered_json report = report_header("oracle-check");
  report["params"] = {{"count", count},
                      {"min_size", min_size},
                      {"max_size", max_size},
                      {"alphabet", alphabet},
                      {"alphas", alphas},
                      {"seed", seed},
                      {"oracle_cap", cap},
                      {"rng", moche::kRngAlgorithmId}};
  report["instances"] = count;
  report["mismatches"] = 0;
  report["status"] = "ok";
  emit_report(report, out_path);
  return kExitPass;
}

int thread_count_from(int flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("MOCHE_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-sample Kolmogorov-Smirnov testing with minimal counterfactual "
      "explanations for failed tests"};
  app.require_subcommand(1);

  std::string ref_path;
  std::string test_path;
  std::string series_path;
  std::string rank_path;
  std::string out_path;
  std::string format = "json";
  std::string preference_mode = "natural";
  bool use_scores = false;
  bool no_timings = false;
  bool require_fail = false;
  bool header = false;
  double alpha = 0.05;
  double fraction = 0.03;
  int window = 1000;
  int stride = 0;
  int threads = 1;
  int oracle_cap = 20;
  int max_retries = 64;
  int count = 1000;
  int min_size = 3;
  int max_size = 12;
  int alphabet = 6;
  std::uint64_t seed = 0;
  std::vector<std::string> method_names = {"moche"};
  std::vector<double> alphas = {0.05, 0.1, 0.2};

  CLI::App* cmd_test = app.add_subcommand(
      "test", "Run the two-sample test on a reference and a test CSV");
  cmd_test->add_option("--reference", ref_path, "Reference sample CSV")
      ->required();
  cmd_test->add_option("--test", test_path, "Test sample CSV")->required();
  cmd_test->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  cmd_test->add_option("--out", out_path, "Write the report here");

  CLI::App* cmd_explain = app.add_subcommand(
      "explain", "Explain a failed test by a minimal removable subset");
  cmd_explain->add_option("--reference", ref_path, "Reference sample CSV")
      ->required();
  cmd_explain->add_option("--test", test_path, "Test sample CSV")->required();
  cmd_explain->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  CLI::Option* ranks_opt = cmd_explain->add_option(
      "--ranks", rank_path, "Preference rank file, one point index per line");
  cmd_explain
      ->add_flag("--score-column", use_scores,
                 "Prefer points by the second CSV column, descending")
      ->excludes(ranks_opt);
  cmd_explain->add_flag("--no-timings", no_timings,
                        "Omit timings for byte-stable reports");
  cmd_explain->add_option("--out", out_path, "Write the report here");

  CLI::App* cmd_batch = app.add_subcommand(
      "batch", "Explain every failed window pair of a series CSV");
  cmd_batch->add_option("--series", series_path, "Series CSV, one column")
      ->required();
  cmd_batch->add_option("--window", window, "Window size w")->required();
  cmd_batch->add_option("--stride", stride,
                        "Window start step (default: window size)");
  cmd_batch->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  cmd_batch
      ->add_option("--preference", preference_mode,
                   "Preference order per instance")->capture_default_str()
      ->check(CLI::IsMember({"natural", "random"}));
  cmd_batch->add_option("--seed", seed, "Seed for random preferences")->capture_default_str();
  cmd_batch
      ->add_option("--methods", method_names,
                   "Comma-separated: moche, greedy, oracle")
      ->delimiter(',');
  cmd_batch->add_option("--oracle-cap", oracle_cap,
                        "Max test size for exhaustive search")->capture_default_str();
  CLI::Option* threads_opt = cmd_batch->add_option(
      "--threads", threads, "Worker threads (env MOCHE_THREADS)")->capture_default_str();
  cmd_batch->add_flag("--no-timings", no_timings,
                      "Omit timings for byte-stable reports");
  cmd_batch->add_option("--format", format, "Report format")->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_batch->add_option("--out", out_path, "Write the report here");

  CLI::App* cmd_synth = app.add_subcommand(
      "synth", "Generate a synthetic drift pair of CSV samples");
  cmd_synth->add_option("--window", window, "Points per sample")->capture_default_str();
  cmd_synth->add_option("--fraction", fraction,
                        "Fraction of test points replaced")->capture_default_str();
  cmd_synth->add_option("--seed", seed, "Seed")->capture_default_str();
  cmd_synth->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  cmd_synth->add_flag("--require-fail", require_fail,
                      "Redraw until the pair fails the test");
  cmd_synth->add_option("--max-retries", max_retries,
                        "Redraw budget for --require-fail")->capture_default_str();
  cmd_synth->add_flag("--header", header, "Write a header line");
  cmd_synth
      ->add_option("--out-reference", ref_path, "Reference CSV to write")
      ->required();
  cmd_synth->add_option("--out-test", test_path, "Test CSV to write")
      ->required();
  cmd_synth->add_option("--out", out_path, "Write the summary here");

  CLI::App* cmd_check = app.add_subcommand(
      "oracle-check",
      "Cross-check the explainer against exhaustive search on random "
      "instances");
  cmd_check->add_option("--count", count, "Instances to check")->capture_default_str();
  cmd_check->add_option("--min-size", min_size, "Smallest n and m")->capture_default_str();
  cmd_check->add_option("--max-size", max_size, "Largest n and m")->capture_default_str();
  cmd_check->add_option("--alphabet", alphabet, "Distinct values")->capture_default_str();
  cmd_check->add_option("--alphas", alphas, "Significance levels")
      ->delimiter(',');
  cmd_check->add_option("--seed", seed, "Seed")->capture_default_str();
  cmd_check->add_option("--oracle-cap", oracle_cap,
                        "Max test size for exhaustive search")->capture_default_str();
  cmd_check->add_option("--out", out_path, "Write the summary here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(cmd_test)) {
      return run_test(ref_path, test_path, alpha, out_path);
    }
    if (app.got_subcommand(cmd_explain)) {
      return run_explain(ref_path, test_path, alpha, rank_path, use_scores,
                         !no_timings, out_path);
    }
    if (app.got_subcommand(cmd_batch)) {
      if (stride <= 0) stride = window;
      return run_batch(series_path, window, stride, alpha, preference_mode,
                       seed, method_names, oracle_cap,
                       thread_count_from(threads, threads_opt->count() > 0),
                       !no_timings, format, out_path);
    }
    if (app.got_subcommand(cmd_synth)) {
      return run_synth(window, fraction, seed, alpha, require_fail,
                       max_retries, header, ref_path, test_path, out_path);
    }
    if (app.got_subcommand(cmd_check)) {
      return run_oracle_check(count, min_size, max_size, alphabet, alphas,
                              seed, oracle_cap, out_path);
    }
  } catch (const moche::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return exit_code_for(error);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
