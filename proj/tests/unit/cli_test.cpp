// Copyright 2026 The purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "purify_cli/cli.hpp"

namespace purify::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "purify");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PURIFY_TEST_DATA_DIR) + "/" + name; }

// Non-comment lines of a CSV output, split on commas.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Cli, SimulateNoEtalonScenario) {
  const Result r = run_cli({"simulate", "--config", data("simulate_no_etalon.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# input = "), std::string::npos);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"scenario", "model", "V_raw", "V_pure",
                                               "improvement", "success_probability"}));
  EXPECT_EQ(rows[1][0], "no-etalon");
  EXPECT_NEAR(std::stod(rows[1][3]), 0.685, 0.05);
  EXPECT_NEAR(std::stod(rows[1][4]), std::stod(rows[1][3]) - std::stod(rows[1][2]), 1e-10);
  EXPECT_EQ(rows[1][5], "0.25");
}

TEST(Cli, SimulateIdealPhotons) {
  const Result r = run_cli({"simulate", "--config", data("simulate_ideal.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  EXPECT_NEAR(std::stod(rows[1][2]), 1.0, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][3]), 1.0, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][4]), 0.0, 1e-12);
}

TEST(Cli, ConfigErrorsExitTwo) {
  const Result missing = run_cli({"simulate", "--config", data("simulate_missing_model.json")});
  EXPECT_EQ(missing.code, kExitConfig);
  EXPECT_NE(missing.err.find("\"model\""), std::string::npos) << missing.err;

  const Result malformed = run_cli({"simulate", "--config", data("simulate_malformed.json")});
  EXPECT_EQ(malformed.code, kExitConfig);
  EXPECT_NE(malformed.err.find("line 3"), std::string::npos) << malformed.err;

  const Result absent = run_cli({"simulate", "--config", data("does_not_exist.json")});
  EXPECT_EQ(absent.code, kExitConfig);

  const Result empty = run_cli({"sweep", "--config", data("sweep_empty.json")});
  EXPECT_EQ(empty.code, kExitConfig);
  EXPECT_NE(empty.err.find("empty grid"), std::string::npos) << empty.err;

  EXPECT_EQ(run_cli({}).code, kExitConfig);
  EXPECT_EQ(run_cli({"simulate"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

TEST(Cli, SweepFinalSplitter) {
  const Result r = run_cli({"sweep", "--config", data("sweep_r_final.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0][0], "r_final");
  EXPECT_LT(std::stod(rows[1][2]), std::stod(rows[3][2]));
}

TEST(Cli, SweepOutputIsByteIdenticalAcrossWorkers) {
  const Result a = run_cli({"sweep", "--config", data("sweep_theta.json"), "--workers", "1"});
  const Result b = run_cli({"sweep", "--config", data("sweep_theta.json"), "--workers", "3"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(csv_rows(a.out).size(), 11u);
}

TEST(Cli, JsonFormat) {
  const Result r = run_cli({"sweep", "--config", data("sweep_r_final.json"), "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "sweep");
  EXPECT_EQ(j["rows"].size(), 5u);
  EXPECT_EQ(j["input"]["sweep"], "r_final");
  EXPECT_TRUE(j["rows"][0].contains("V_pure"));
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "purify_cli_test_out.csv";
  const Result r = run_cli({"simulate", "--config", data("simulate_ideal.json"), "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("ideal"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, McDephasing) {
  EXPECT_EQ(run_cli({"mc-dephasing", "--config", data("mc_dephasing.json")}).code, kExitConfig);
  const Result a = run_cli({"mc-dephasing", "--config", data("mc_dephasing.json"), "--seed", "5"});
  const Result b = run_cli(
      {"mc-dephasing", "--config", data("mc_dephasing.json"), "--seed", "5", "--workers", "2"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = csv_rows(a.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"quantity", "estimate", "standard_error", "closed_form"}));
  EXPECT_EQ(rows[1][0], "pair");
  EXPECT_NEAR(std::stod(rows[1][1]), 1.0 / 1.2, 5.0 * std::stod(rows[1][2]));
}

TEST(Cli, FitRawPeaks) {
  const Result r = run_cli({"fit", "--counts", data("raw_peaks.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# t = "), std::string::npos);
  const auto rows = csv_rows(r.out);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.3, 1e-6);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.9, 1e-6);

  const Result h = run_cli({"fit", "--histogram", data("raw_histogram.csv")});
  ASSERT_EQ(h.code, kExitOk) << h.err;
  const auto hrows = csv_rows(h.out);
  EXPECT_NEAR(std::stod(hrows[1][2]), 0.9, 1e-6);
}

TEST(Cli, FitPurified) {
  const Result missing = run_cli({"fit", "--counts", data("pure_peaks.csv"), "--mode", "pure"});
  EXPECT_EQ(missing.code, kExitConfig);
  EXPECT_NE(missing.err.find("--v-raw"), std::string::npos);
  const Result r =
      run_cli({"fit", "--counts", data("pure_peaks.csv"), "--mode", "pure", "--v-raw", "0.83"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.3, 1e-6);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.91, 1e-6);
}

TEST(Cli, FitUncertaintyIsReproducible) {
  const std::vector<std::string> args = {"fit", "--counts", data("raw_peaks.csv"),
                                         "--mc-resamples", "100", "--seed", "7"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_GT(std::stod(csv_rows(a.out)[1][5]), 0.0);
  EXPECT_EQ(run_cli({"fit", "--counts", data("raw_peaks.csv"), "--mc-resamples", "100"}).code,
            kExitConfig);
}

}  // namespace
}  // namespace purify::cli
