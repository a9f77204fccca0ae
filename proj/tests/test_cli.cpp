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

// End-to-end tests of the command-line binary. The binary path arrives in the
// MOCHE_CLI environment variable (ctest sets it; export it when running this
// suite by hand).

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "moche/csv.hpp"
#include "moche/datagen.hpp"

namespace {

using nlohmann::json;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "moche_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string temp_path(const std::string& name) {
  return (temp_dir() / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  REQUIRE(out.good());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CliResult run_cli(const std::string& args) {
  static int invocation = 0;
  const char* binary = std::getenv("MOCHE_CLI");
  REQUIRE_MESSAGE(binary != nullptr,
                  "MOCHE_CLI must point at the moche binary");
  const std::string out_path =
      temp_path("stdout_" + std::to_string(invocation));
  const std::string err_path =
      temp_path("stderr_" + std::to_string(invocation));
  ++invocation;
  const std::string command = std::string("\"") + binary + "\" " + args +
                              " >" + out_path + " 2>" + err_path;
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

// The worked instance as on-disk fixtures.
struct GoldenFiles {
  std::string reference;
  std::string test;
  std::string ranks;
};

GoldenFiles golden_files() {
  GoldenFiles files;
  files.reference = temp_path("golden_ref.csv");
  files.test = temp_path("golden_test.csv");
  files.ranks = temp_path("golden_ranks.txt");
  write_file(files.reference, "14\n14\n14\n14\n20\n20\n20\n20\n");
  write_file(files.test, "13\n13\n12\n20\n");
  write_file(files.ranks, "3\n2\n1\n0\n");
  return files;
}

}  // namespace

TEST_CASE("test subcommand verdicts and exit codes") {
  const GoldenFiles files = golden_files();

  const CliResult failed = run_cli("test --reference " + files.reference +
                                   " --test " + files.test + " --alpha 0.3");
  CHECK(failed.exit_code == 1);
  const json failed_report = json::parse(failed.out);
  CHECK(failed_report["result"]["failed"] == true);
  CHECK(failed_report["result"]["statistic"] == doctest::Approx(0.75));
  CHECK(failed_report["result"]["threshold"] ==
        doctest::Approx(0.5964142831674161));
  CHECK(failed_report["schema_version"] == 1);

  const CliResult passed = run_cli("test --reference " + files.reference +
                                   " --test " + files.reference);
  CHECK(passed.exit_code == 0);
  const json passed_report = json::parse(passed.out);
  CHECK(passed_report["result"]["failed"] == false);
  CHECK(passed_report["result"]["statistic"] == doctest::Approx(0.0));
}

TEST_CASE("malformed input exits with code 2 and names the line") {
  const std::string bad = temp_path("bad.csv");
  write_file(bad, "1\n2\noops\n");
  const GoldenFiles files = golden_files();
  const CliResult result =
      run_cli("test --reference " + files.reference + " --test " + bad);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("line 3") != std::string::npos);

  const CliResult missing =
      run_cli("test --reference no_such_file.csv --test " + files.test);
  CHECK(missing.exit_code == 2);

  const CliResult bad_alpha = run_cli("test --reference " + files.reference +
                                      " --test " + files.test + " --alpha 7");
  CHECK(bad_alpha.exit_code == 2);
}

TEST_CASE("explain subcommand on the worked instance") {
  const GoldenFiles files = golden_files();
  const CliResult result = run_cli(
      "explain --reference " + files.reference + " --test " + files.test +
      " --alpha 0.3 --ranks " + files.ranks);
  CHECK(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report["explanation"]["k"] == 2);
  CHECK(report["explanation"]["k_hat"] == 2);
  CHECK(report["explanation"]["verified"] == true);
  REQUIRE(report["explanation"]["points"].size() == 2);
  CHECK(report["explanation"]["points"][0]["index"] == 2);
  CHECK(report["explanation"]["points"][0]["value"] == doctest::Approx(12.0));
  CHECK(report["explanation"]["points"][0]["rank"] == 1);
  CHECK(report["explanation"]["points"][1]["index"] == 1);
  CHECK(report["explanation"]["points"][1]["rank"] == 2);
  CHECK(report["residual_test"]["failed"] == false);
  CHECK(report["rmse"]["after"] < report["rmse"]["before"]);
  CHECK(report.contains("timing_seconds"));
}

TEST_CASE("explain without a rank file uses the natural order") {
  const GoldenFiles files = golden_files();
  const CliResult result =
      run_cli("explain --reference " + files.reference + " --test " +
              files.test + " --alpha 0.3");
  CHECK(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report["params"]["preference"] == "natural");
  CHECK(report["explanation"]["points"][0]["index"] == 0);
  CHECK(report["explanation"]["points"][1]["index"] == 1);
}

TEST_CASE("explain with a score column, distinct and tied") {
  const GoldenFiles files = golden_files();
  // Highest score first: the value 12 (index 2), then 13 (index 1).
  const std::string scored = temp_path("scored_test.csv");
  write_file(scored, "13,0.2\n13,0.5\n12,0.9\n20,0.1\n");
  const CliResult result =
      run_cli("explain --reference " + files.reference + " --test " + scored +
              " --alpha 0.3 --score-column");
  CHECK(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report["explanation"]["points"][0]["index"] == 2);
  CHECK(report["explanation"]["points"][1]["index"] == 1);

  // All-equal scores degrade to the natural order.
  const std::string tied = temp_path("tied_test.csv");
  write_file(tied, "13,1\n13,1\n12,1\n20,1\n");
  const CliResult tied_result =
      run_cli("explain --reference " + files.reference + " --test " + tied +
              " --alpha 0.3 --score-column");
  CHECK(tied_result.exit_code == 0);
  const json tied_report = json::parse(tied_result.out);
  CHECK(tied_report["explanation"]["points"][0]["index"] == 0);
  CHECK(tied_report["explanation"]["points"][1]["index"] == 1);

  // Requesting scores without a score column is an input error.
  const CliResult no_scores =
      run_cli("explain --reference " + files.reference + " --test " +
              files.test + " --alpha 0.3 --score-column");
  CHECK(no_scores.exit_code == 2);
}

TEST_CASE("explain on a passing pair exits with code 3") {
  const GoldenFiles files = golden_files();
  const CliResult result = run_cli("explain --reference " + files.reference +
                                   " --test " + files.reference);
  CHECK(result.exit_code == 3);
  CHECK(result.err.find("TestNotFailed") != std::string::npos);
}

TEST_CASE("explain rejects a non-permutation rank file") {
  const GoldenFiles files = golden_files();
  const std::string dup = temp_path("dup_ranks.txt");
  write_file(dup, "0\n0\n1\n2\n");
  const CliResult result =
      run_cli("explain --reference " + files.reference + " --test " +
              files.test + " --alpha 0.3 --ranks " + dup);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("InvalidPreference") != std::string::npos);
}

TEST_CASE("explain reports are byte-identical without timings") {
  const GoldenFiles files = golden_files();
  const std::string args = "explain --reference " + files.reference +
                           " --test " + files.test +
                           " --alpha 0.3 --ranks " + files.ranks +
                           " --no-timings";
  const CliResult first = run_cli(args);
  const CliResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(json::parse(first.out).contains("timing_seconds") == false);
}

TEST_CASE("synth generates deterministic failing pairs") {
  const std::string ref_a = temp_path("synth_ref_a.csv");
  const std::string test_a = temp_path("synth_test_a.csv");
  const std::string ref_b = temp_path("synth_ref_b.csv");
  const std::string test_b = temp_path("synth_test_b.csv");
  const std::string args_tail =
      " --window 120 --fraction 0.1 --seed 7 --require-fail";
  const CliResult first = run_cli("synth --out-reference " + ref_a +
                                  " --out-test " + test_a + args_tail);
  const CliResult second = run_cli("synth --out-reference " + ref_b +
                                   " --out-test " + test_b + args_tail);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(read_file(ref_a) == read_file(ref_b));
  CHECK(read_file(test_a) == read_file(test_b));
  const json report = json::parse(first.out);
  CHECK(report["result"]["replaced"] == 12);
  CHECK(report["result"]["test"]["failed"] == true);
  CHECK(report["params"]["rng"] == moche::kRngAlgorithmId);

  // The generated files immediately drive a failing test.
  const CliResult verdict =
      run_cli("test --reference " + ref_a + " --test " + test_a);
  CHECK(verdict.exit_code == 1);

  const CliResult bad =
      run_cli("synth --out-reference " + ref_a + " --out-test " + test_a +
              " --window 10 --fraction 1.5");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("batch explains every failed window pair") {
  // A failing synthetic pair glued into one series gives exactly one window
  // pair, which fails.
  moche::SynthSpec spec;
  spec.window = 60;
  spec.drift_fraction = 0.25;
  spec.seed = 5;
  const moche::SynthPair pair = moche::synth_drift_failing(spec, 0.05);
  std::vector<double> series = pair.reference;
  series.insert(series.end(), pair.test.begin(), pair.test.end());
  const std::string series_path = temp_path("series.csv");
  moche::write_value_csv(series_path, series, /*header=*/false);

  const CliResult result = run_cli(
      "batch --series " + series_path +
      " --window 60 --methods moche,greedy,oracle --oracle-cap 100");
  CHECK(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report["windows"]["total"] == 1);
  CHECK(report["windows"]["failed"] == 1);
  REQUIRE(report["rows"].size() == 1);
  const json& row = report["rows"][0];
  REQUIRE(row["methods"].size() == 3);
  CHECK(row["methods"][0]["method"] == "moche");
  CHECK(row["methods"][0]["is_smallest"] == 1);
  CHECK(row["methods"][0]["reversed"] == true);
  CHECK(report["aggregates"]["methods"]["moche"]["reverse_factor"] == 1.0);
  CHECK(report["aggregates"]["methods"]["moche"]["ise"] == 1.0);

  // A constant series never fails; the report is empty but valid.
  const std::string flat_path = temp_path("flat.csv");
  std::vector<double> flat(200, 1.0);
  moche::write_value_csv(flat_path, flat, false);
  const CliResult empty =
      run_cli("batch --series " + flat_path + " --window 50");
  CHECK(empty.exit_code == 0);
  const json empty_report = json::parse(empty.out);
  CHECK(empty_report["windows"]["failed"] == 0);
  CHECK(empty_report["rows"].empty());

  const CliResult unknown = run_cli(
      "batch --series " + flat_path + " --window 50 --methods nonsense");
  CHECK(unknown.exit_code == 2);

  const CliResult too_short =
      run_cli("batch --series " + flat_path + " --window 200");
  CHECK(too_short.exit_code == 2);
  CHECK(too_short.err.find("SeriesTooShort") != std::string::npos);
}

TEST_CASE("batch output is deterministic across runs and thread counts") {
  moche::SynthSpec spec;
  spec.window = 40;
  spec.drift_fraction = 0.3;
  std::vector<double> series;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    spec.seed = seed;
    const moche::SynthPair pair = moche::synth_drift_failing(spec, 0.05, 200);
    series.insert(series.end(), pair.reference.begin(), pair.reference.end());
    series.insert(series.end(), pair.test.begin(), pair.test.end());
  }
  const std::string series_path = temp_path("multi_series.csv");
  moche::write_value_csv(series_path, series, false);

  const std::string args = "batch --series " + series_path +
                           " --window 40 --preference random --seed 11 "
                           "--methods moche,greedy --no-timings";
  const CliResult one = run_cli(args + " --threads 1");
  const CliResult four = run_cli(args + " --threads 4");
  const CliResult again = run_cli(args + " --threads 4");
  CHECK(one.exit_code == 0);
  // Identical invocations are byte-identical; varying only the worker count
  // leaves every computed row and aggregate unchanged.
  CHECK(four.out == again.out);
  CHECK(json::parse(one.out)["rows"] == json::parse(four.out)["rows"]);
  CHECK(json::parse(one.out)["aggregates"] ==
        json::parse(four.out)["aggregates"]);
  const json report = json::parse(one.out);
  CHECK(report["windows"]["failed"].get<int>() >= 6);
  CHECK(report["params"]["seed"] == 11);

  // CSV format round: same rows, still deterministic.
  const CliResult csv_one = run_cli(args + " --format csv --threads 2");
  const CliResult csv_two = run_cli(args + " --format csv --threads 3");
  CHECK(csv_one.exit_code == 0);
  CHECK(csv_one.out == csv_two.out);
  CHECK(csv_one.out.find("row,offset,n,m,q") == 0);
}

TEST_CASE("oracle-check agrees on random instances") {
  const CliResult result =
      run_cli("oracle-check --count 40 --seed 2026 --max-size 9");
  CHECK(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report["status"] == "ok");
  CHECK(report["mismatches"] == 0);
  CHECK(report["instances"] == 40);

  const CliResult vacuous = run_cli("oracle-check --count 0");
  CHECK(vacuous.exit_code == 0);
  CHECK(json::parse(vacuous.out)["status"] == "ok");

  const CliResult bad_cap = run_cli("oracle-check --count 1 --max-size 30");
  CHECK(bad_cap.exit_code == 2);
}
