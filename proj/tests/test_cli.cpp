// Copyright 2026 The pirsi Authors
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

// Drives the installed CLI binary end to end. The binary path and the
// golden directory come from PIRSI_CLI_BIN / PIRSI_GOLDEN_DIR (set by
// ctest).

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* path = std::getenv("PIRSI_CLI_BIN");
  REQUIRE_MESSAGE(path != nullptr, "PIRSI_CLI_BIN not set");
  return path;
}

std::string golden_dir() {
  const char* path = std::getenv("PIRSI_GOLDEN_DIR");
  REQUIRE_MESSAGE(path != nullptr, "PIRSI_GOLDEN_DIR not set");
  return path;
}

RunResult run_cli(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path).c_str());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("example output matches the committed golden files byte for byte") {
  const RunResult text = run_cli("example");
  CHECK(text.exit_code == 0);
  CHECK(text.output == slurp(golden_dir() + "/example.txt"));

  const RunResult js = run_cli("example --format json");
  CHECK(js.exit_code == 0);
  CHECK(js.output == slurp(golden_dir() + "/example.json"));
}

TEST_CASE("rate json follows the published schema") {
  const RunResult result = run_cli("rate --N 3 --K 3 --M 1 --format json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["params"]["N"] == 3);
  CHECK(doc["params"]["K"] == 3);
  CHECK(doc["params"]["M"] == 1);
  CHECK(doc["params"]["L"] == 2);
  CHECK(doc["params"]["q"] == 2);
  CHECK(doc["g"] == 2);
  CHECK(doc["P"] == nlohmann::json::array({"1/2", "1/2"}));
  CHECK(doc["R"] == "4/5");
  CHECK(doc["Rstar"] == "3/4");
  CHECK(doc["relation"] == "strictly_greater");
  CHECK(doc["checks"].is_array());
}

TEST_CASE("rate csv sweep has one row per cell") {
  const RunResult result =
      run_cli("rate --sweep N=2..3,K=2..4,M=1..3 --format csv");
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line ==
        "N,K,M,L,q,g,divisible,R,Rstar,RL,relation,"
        "expected_download_symbols");
  unsigned rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  // K=2: M=1; K=3: M=1,2; K=4: M=1,2,3 -> 6 per N, two N values.
  CHECK(rows == 12);

  // The full sweep: M clipped to K-1 gives 18 cells per N.
  const RunResult wide =
      run_cli("rate --sweep N=2..5,K=2..8,M=1..3 --format csv");
  REQUIRE(wide.exit_code == 0);
  std::istringstream wide_lines(wide.output);
  unsigned wide_rows = 0;
  std::getline(wide_lines, line);
  while (std::getline(wide_lines, line)) {
    if (!line.empty()) ++wide_rows;
  }
  CHECK(wide_rows == 72);
}

TEST_CASE("verify passes on sound cells") {
  CHECK(run_cli("verify --N 3 --K 3 --M 1").exit_code == 0);
  CHECK(run_cli("verify --N 2 --K 5 --M 1").exit_code == 0);
}

TEST_CASE("verify json reports every check") {
  const RunResult result = run_cli("verify --N 3 --K 4 --M 1 --format json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  REQUIRE(doc["checks"].size() == 5);
  for (const auto& check : doc["checks"]) {
    CHECK(check["pass"] == true);
  }
}

TEST_CASE("verify detects the documented mutations") {
  const RunResult fixed_b = run_cli("verify --N 3 --K 3 --M 1 --mutate fixed-b");
  CHECK(fixed_b.exit_code == 1);
  CHECK(fixed_b.output.find("[FAIL] privacy") != std::string::npos);

  const RunResult perturbed =
      run_cli("verify --N 3 --K 3 --M 1 --mutate perturb-p1");
  CHECK(perturbed.exit_code == 1);
  CHECK(perturbed.output.find("[FAIL] pk_conditions") != std::string::npos);
}

TEST_CASE("budget exhaustion is reported as a skip, not a failure") {
  const RunResult result = run_cli("verify --N 3 --K 3 --M 1 --budget 2");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("[SKIP]") != std::string::npos);
}

TEST_CASE("simulate agrees with the analytic expectation") {
  const RunResult result = run_cli(
      "simulate --N 3 --K 3 --M 1 --sessions 100000 --seed 7 --format json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["experiment"]["analytic_rate"] == "4/5");
  CHECK(doc["experiment"]["analytic_expectation"] == "5/2");
  CHECK(doc["experiment"]["within_3sigma"] == true);
  CHECK(doc["experiment"]["sessions"] == 100000);
}

TEST_CASE("simulate routes small L through the two-step scheme") {
  const RunResult result = run_cli(
      "simulate --N 4 --K 3 --M 1 --L 2 --sessions 20000 --seed 3 "
      "--format json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["experiment"]["scheme"] == "two_step");
  CHECK(doc["experiment"]["analytic_rate"] == "4/5");
  CHECK(doc["RL"] == "4/5");
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(run_cli("rate --N 1 --K 3 --M 1").exit_code != 0);
  CHECK(run_cli("bogus-subcommand").exit_code != 0);
  CHECK(run_cli("rate --format yaml").exit_code != 0);
}
