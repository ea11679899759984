// Copyright 2026 The padmm Authors
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

// Runs the padmm binary as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

using json = nlohmann::json;

struct Output {
  int status = -1;
  std::string out;
};

Output RunCli(const std::string& args) {
  const std::string cmd = std::string(PADMM_CLI_PATH) + " " + args + " 2>/dev/null";
  Output o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) o.out.append(buf, n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("padmm_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliTest, PlanPrintsReferenceChain) {
  const Output o = RunCli(
      "plan --epsilon 1 --delta 1e-4 --T 30 --sizes 7000,7000,7000,7000,7000 "
      "--degrees 2,2,2,2,2");
  ASSERT_EQ(o.status, 0);
  const json plan = json::parse(o.out);
  EXPECT_NEAR(plan["rho_total"].get<double>(), 0.027143405118953239, 1e-15);
  EXPECT_NEAR(plan["lambda_hat_floor"].get<double>(), 0.27264783113130747,
              1e-12);
  EXPECT_NEAR(plan["sigma_i2"][0].get<double>(), 0.11441976981595366, 1e-12);
}

TEST(CliTest, PlanRejectsNonPrivate) {
  EXPECT_NE(RunCli("plan --algorithm nonprivate").status, 0);
}

TEST(CliTest, RunWithOverridesIsReproducible) {
  const auto cfg = TempPath("exp.cfg");
  std::ofstream(cfg) << "synthetic_n = 300\nsynthetic_d = 3\nT = 4\n"
                        "seeds = 1,2\n";
  const auto out_a = TempPath("a.ndjson");
  const auto out_b = TempPath("b.ndjson");
  const std::string common = "run --config " + cfg.string() + " --epsilon 5 ";
  ASSERT_EQ(RunCli(common + "--output " + out_a.string()).status, 0);
  ASSERT_EQ(RunCli(common + "--output=" + out_b.string()).status, 0);
  const std::string a = Slurp(out_a);
  const std::string b = Slurp(out_b);
  ASSERT_FALSE(a.empty());
  // Only the echoed output path may differ, and it lives on the first line.
  EXPECT_EQ(a.substr(a.find('\n')), b.substr(b.find('\n')));
  std::istringstream lines(a);
  std::string first;
  std::getline(lines, first);
  const json config = json::parse(first);
  EXPECT_EQ(config["config"]["epsilon"], "5");
  EXPECT_EQ(config["config"]["T"], "4");
  std::filesystem::remove(cfg);
  std::filesystem::remove(out_a);
  std::filesystem::remove(out_b);
}

TEST(CliTest, DashedAndUnderscoredFlagsAgree) {
  const Output a = RunCli("run --synthetic-n 200 --T 2 --insecure-no-noise");
  const Output b = RunCli("run --synthetic_n 200 --T 2 --insecure_no_noise");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, ValidateReportsBadConfig) {
  const auto good = TempPath("good.cfg");
  std::ofstream(good) << "synthetic_n = 300\n";
  EXPECT_EQ(RunCli("validate --config " + good.string()).status, 0);
  const auto bad = TempPath("bad.cfg");
  std::ofstream(bad) << "epsilon = -1\n";
  EXPECT_NE(RunCli("validate --config " + bad.string()).status, 0);
  const auto unknown = TempPath("unknown.cfg");
  std::ofstream(unknown) << "colour = blue\n";
  EXPECT_NE(RunCli("validate --config " + unknown.string()).status, 0);
  EXPECT_NE(RunCli("validate --config " + good.string() + " --lambda_hat 1e-6")
                .status,
            0);
  EXPECT_NE(RunCli("validate --config /nonexistent.cfg").status, 0);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  std::filesystem::remove(unknown);
}

TEST(CliTest, MissingSubcommandFails) {
  EXPECT_NE(RunCli("").status, 0);
  EXPECT_NE(RunCli("run --epsilon").status, 0);
}

}  // namespace
