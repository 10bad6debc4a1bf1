/*
 * Copyright 2026 ccdel authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// End-to-end runs of the command line tool. The binary path arrives in the
// CCDEL_CLI environment variable, set by CTest.

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const char* bin = std::getenv("CCDEL_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "CCDEL_CLI must point at the command line binary");
  std::string cmd = std::string(bin) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("compute prints a schedule as json") {
  RunResult r = run_cli("compute -K 4 -N 4 -M 2 --gains 1,3,3,3");
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["mode"] == "centralized");
  CHECK(j["scheme"] == "orthogonal");
  CHECK(std::fabs(j["total_time"].get<double>() - 7.0 / 12.0) <= 1e-12);
  CHECK(j["group_count"] == 2);
  CHECK_FALSE(j["entries"][0].contains("sets"));

  RunResult with_sets = run_cli("compute -K 4 -N 4 -M 2 --gains 1,3,3,3 --with-sets");
  REQUIRE(with_sets.code == 0);
  nlohmann::json js = nlohmann::json::parse(with_sets.output);
  CHECK(js["entries"][0]["sets"].size() == 3);
}

TEST_CASE("compute supports sampled channels and the concurrent scheme") {
  RunResult r = run_cli(
      "compute -K 4 -N 4 -M 1 --mode decentralized --scheme concurrent --channel-seed 5");
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["scheme"] == "concurrent");
  CHECK(j.contains("power_shares"));
  CHECK(std::fabs(j["region_residual"].get<double>()) <= 1e-6);

  RunResult again = run_cli(
      "compute -K 4 -N 4 -M 1 --mode decentralized --scheme concurrent --channel-seed 5");
  CHECK(again.output == r.output);

  RunResult frac = run_cli("compute -K 4 -N 4 -M 3/2 --mode decentralized --channel-seed 5");
  CHECK(frac.code == 0);
}

TEST_CASE("compute rejects bad usage with exit code 2") {
  CHECK(run_cli("compute -K 4 -N 4 -M 3/2 --gains 1,2,3,4", true).code == 2);
  CHECK(run_cli("compute -K 4 -N 4 -M 2 --gains 1,2 ", true).code == 2);
  CHECK(run_cli("compute -K 4 -N 4 -M 2 --gains 1,2,3,4 --channel-seed 7", true).code == 2);
  CHECK(run_cli("compute -K 4 -N 4 -M 2", true).code == 2);  // no channel at all
  CHECK(run_cli("compute -N 4 -M 2 --channel-seed 1", true).code == 2);  // missing -K
  CHECK(run_cli("compute -K 4 -N 4 -M 2 --scheme fast --channel-seed 1", true).code == 2);
  RunResult r = run_cli("compute -K 4 -N 4 -M 3/2 --gains 1,2,3,4", true);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("unsorted gains are accepted with a note") {
  RunResult r = run_cli("compute -K 2 -N 2 -M 1 --gains 3,1", true);
  REQUIRE(r.code == 0);
  CHECK(r.output.find("note: gains sorted ascending") != std::string::npos);
}

TEST_CASE("trace replays delivery and reports the decode") {
  RunResult r = run_cli("trace -K 4 -N 4 -M 2 --file-bits 60 --seed 3 --gains 1,3,3,3");
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["decode_ok"] == true);
  CHECK(j["message_count"] == 4);
  CHECK(j["failures"].empty());

  RunResult rep =
      run_cli("trace -K 4 -N 4 -M 2 --file-bits 60 --seed 3 --gains 1,3,3,3 --requests 2,2,1,1");
  REQUIRE(rep.code == 0);
  CHECK(nlohmann::json::parse(rep.output)["requests"] == nlohmann::json::array({2, 2, 1, 1}));

  RunResult rand = run_cli(
      "trace -K 2 -N 2 -M 1 --mode decentralized --file-bits 100 --seed 7 --channel-seed 2");
  REQUIRE(rand.code == 0);
  CHECK(nlohmann::json::parse(rand.output)["decode_ok"] == true);
}

TEST_CASE("trace rejects an indivisible file size") {
  RunResult r = run_cli("trace -K 4 -N 4 -M 2 --file-bits 61 --seed 3 --gains 1,3,3,3", true);
  CHECK(r.code == 2);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("sweep prints csv") {
  RunResult r = run_cli("sweep -K 2 -N 2 --trials 20 --seed 1");
  REQUIRE(r.code == 0);
  CHECK(r.output.rfind("M,mode,scheme,mean_time,stderr_time,trials\n", 0) == 0);
  CHECK(r.output.find("\nM,metric,value\n") != std::string::npos);

  RunResult grid = run_cli("sweep -K 2 -N 2 --m-grid 0,1,2 --trials 10 --seed 1");
  REQUIRE(grid.code == 0);
  std::istringstream in(grid.output);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1 + 12 + 1 + 1 + 6);

  CHECK(run_cli("sweep -K 2 -N 2 --trials 20", true).code == 2);  // missing --seed
}

TEST_CASE("verify exits 0 on success and 1 on violations") {
  RunResult ok = run_cli("verify --k-list 2 --trials 50 --seed 1");
  REQUIRE(ok.code == 0);
  nlohmann::json j = nlohmann::json::parse(ok.output);
  CHECK(j["ok"] == true);

  // 1.4 is below the provable worst case, so the data must reject it; the
  // report is still written before the nonzero exit
  RunResult bad = run_cli("verify --k-list 2 --trials 200 --seed 1 --gap-bound 1.4");
  CHECK(bad.code == 1);
  nlohmann::json jb = nlohmann::json::parse(bad.output);
  CHECK(jb["ok"] == false);
  CHECK_FALSE(jb["failures"].empty());

  CHECK(run_cli("verify --k-list 2 --trials 10 --seed 1 --gap-bound 0.5", true).code == 2);
}

TEST_CASE("results can be written to a file") {
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "ccdel_cli_test_out.json";
  std::filesystem::remove(path);
  RunResult r =
      run_cli("compute -K 2 -N 2 -M 1 --gains 1,3 -o " + path.string(), true);
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["total_time"].get<double>() > 0.0);
  std::filesystem::remove(path);

  CHECK(run_cli("compute -K 2 -N 2 -M 1 --gains 1,3 -o /nonexistent-dir/x.json", true).code ==
        4);
}

TEST_CASE("top level usage errors exit 2, help exits 0") {
  CHECK(run_cli("", true).code == 2);                // a subcommand is required
  CHECK(run_cli("frobnicate", true).code == 2);      // unknown subcommand
  CHECK(run_cli("--help", true).code == 0);
  CHECK(run_cli("compute --help", true).code == 0);
}
