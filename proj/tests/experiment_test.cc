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

#include "padmm/experiment.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

namespace padmm {
namespace {

using json = nlohmann::json;

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.synthetic_n = 400;
  c.synthetic_d = 3;
  c.T = 8;
  c.seeds = {0, 1};
  return c;
}

std::vector<json> Records(const RunReport& report) {
  std::ostringstream out;
  WriteReport(report, out);
  std::istringstream in(out.str());
  std::vector<json> records;
  std::string line;
  while (std::getline(in, line)) records.push_back(json::parse(line));
  return records;
}

TEST(ExperimentConfigTest, DefaultsAreValid) {
  const ExperimentConfig c;
  EXPECT_NO_THROW(c.Validate());
  EXPECT_EQ(c.eta, 0.5);
  EXPECT_EQ(c.T, 30);
  EXPECT_EQ(c.c_max, 15);
  EXPECT_EQ(c.delta, 1e-4);
  EXPECT_EQ(c.splits, 0.001);
  EXPECT_DOUBLE_EQ(c.beta, std::pow(10.0, -3.5));
  EXPECT_EQ(c.c_loss, 2.0);
  EXPECT_EQ(c.alpha, 1e-3);
  EXPECT_EQ(c.n_agents, 5);
  EXPECT_EQ(c.test_fraction, 0.2);
}

TEST(ExperimentConfigTest, TextRoundTrip) {
  ExperimentConfig c;
  c.algorithm = Algorithm::kIppAdmm;
  c.epsilon = 0.1 + 0.2;  // not exactly representable in short decimal
  c.lambda_hat = 1.0 / 3.0;
  c.delta_i1 = 1e-7;
  c.seeds = {5, 6, 18446744073709551615ULL};
  c.topology = "ring";
  c.insecure_no_noise = true;
  c.calibration = RhoCalibration::kExactInverse;
  const ExperimentConfig back = ParseConfig(c.ToText());
  EXPECT_EQ(back, c);
  EXPECT_EQ(ParseConfig(ExperimentConfig{}.ToText()), ExperimentConfig{});
}

TEST(ExperimentConfigTest, ParseSkipsCommentsAndReportsLines) {
  const ExperimentConfig c =
      ParseConfig("# comment\n\n  epsilon = 10   # inline\nT=5\n");
  EXPECT_EQ(c.epsilon, 10.0);
  EXPECT_EQ(c.T, 5);
  try {
    ParseConfig("T = 5\nbogus = 1\n");
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(ParseConfig("T = five\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfig("epsilon\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfig("insecure_no_noise = maybe\n"),
               std::invalid_argument);
}

TEST(ExperimentConfigTest, EveryKeyIsSettable) {
  const ExperimentConfig base;
  const std::string text = base.ToText();
  for (const auto& key : ConfigKeys()) {
    EXPECT_NE(text.find(key + " = "), std::string::npos) << key;
  }
  ExperimentConfig c;
  SetConfigValue(c, "lambda_hat", "auto");
  EXPECT_FALSE(c.lambda_hat.has_value());
  SetConfigValue(c, "lambda_hat", "0.5");
  EXPECT_EQ(c.lambda_hat, 0.5);
  EXPECT_THROW(SetConfigValue(c, "nope", "1"), std::invalid_argument);
}

TEST(ExperimentConfigTest, ValidateNamesKey) {
  ExperimentConfig c;
  c.test_fraction = 1.0;
  try {
    c.Validate();
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("test_fraction"), std::string::npos);
  }
  c = ExperimentConfig{};
  c.algorithm = Algorithm::kIppAdmm;
  c.c_max = 31;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.seeds.clear();
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

TEST(MeanAndStdTest, PopulationStd) {
  EXPECT_EQ(MeanAndStd({3.0}), std::make_pair(3.0, 0.0));
  const auto [m, s] = MeanAndStd({1.0, 3.0});
  EXPECT_EQ(m, 2.0);
  EXPECT_EQ(s, 1.0);
}

TEST(RunExperimentTest, NonPrivateLossDecreasesAfterRoundFive) {
  ExperimentConfig c;
  c.algorithm = Algorithm::kNonPrivate;
  const RunReport r = RunExperiment(c);
  ASSERT_EQ(r.aggregate.size(), 30u);
  for (size_t t = 5; t < r.aggregate.size(); ++t) {
    EXPECT_LE(r.aggregate[t].loss_mean, r.aggregate[t - 1].loss_mean);
  }
  EXPECT_EQ(r.aggregate[0].loss_std, 0.0);
  EXPECT_TRUE(std::isinf(r.epsilon_spent));
  EXPECT_EQ(r.lambda_hat, kDefaultNonPrivateLambda);
}

TEST(RunExperimentTest, PrivacyReportWithinBudget) {
  ExperimentConfig c = SmallConfig();
  c.calibration = RhoCalibration::kExactInverse;
  const RunReport r = RunExperiment(c);
  ASSERT_TRUE(r.plan.has_value());
  EXPECT_LE(r.epsilon_spent, c.epsilon + 1e-9);
  EXPECT_NEAR(r.epsilon_spent, c.epsilon, 1e-9);
  EXPECT_EQ(r.runs.size(), 2u);
  EXPECT_EQ(r.per_agent_rho.size(), 5u);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(RunExperimentTest, DefaultCalibrationOvershootIsReported) {
  const RunReport r = RunExperiment(SmallConfig());
  EXPECT_GT(r.epsilon_spent, 1.0);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("exceeds the configured epsilon"),
            std::string::npos);
}

TEST(RunExperimentTest, IppCountsBoundedByC) {
  ExperimentConfig c = SmallConfig();
  c.algorithm = Algorithm::kIppAdmm;
  c.T = 20;
  c.c_max = 15;
  const RunReport r = RunExperiment(c);
  for (const auto& run : r.runs) {
    for (const int k : run.result.broadcast_counts) EXPECT_LE(k, 15);
  }
  const json summary = Records(r).back();
  EXPECT_EQ(summary["broadcast_counts"].size(), 2u);
}

TEST(RunExperimentTest, InsecureModeWarnsAndReportsInfinity) {
  ExperimentConfig c = SmallConfig();
  c.insecure_no_noise = true;
  const RunReport r = RunExperiment(c);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_TRUE(std::isinf(r.epsilon_spent));
  EXPECT_EQ(Records(r).back()["privacy"]["epsilon"], "inf");
}

TEST(RunExperimentTest, ReportIsReproducible) {
  const ExperimentConfig c = SmallConfig();
  std::ostringstream a;
  std::ostringstream b;
  WriteReport(RunExperiment(c), a);
  WriteReport(RunExperiment(c), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunExperimentTest, ConfigEchoReproducesRun) {
  const ExperimentConfig c = SmallConfig();
  const RunReport r = RunExperiment(c);
  const std::vector<json> records = Records(r);
  ASSERT_EQ(records.front()["type"], "config");
  const ExperimentConfig echoed =
      ParseConfig(records.front()["config_text"].get<std::string>());
  EXPECT_EQ(echoed, c);
  std::ostringstream a;
  std::ostringstream b;
  WriteReport(r, a);
  WriteReport(RunExperiment(echoed), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunExperimentTest, RecordLayout) {
  const RunReport r = RunExperiment(SmallConfig());
  const std::vector<json> records = Records(r);
  // config + 2 seeds * 8 rounds + 8 aggregates + summary
  ASSERT_EQ(records.size(), 1u + 16u + 8u + 1u);
  EXPECT_EQ(records[1]["type"], "round");
  EXPECT_EQ(records[1]["round"], 1);
  EXPECT_EQ(records[17]["type"], "aggregate");
  EXPECT_EQ(records.back()["type"], "summary");
  EXPECT_EQ(records.back()["num_seeds"], 2);
}

TEST(RunExperimentTest, ErrorsCarryContext) {
  ExperimentConfig c = SmallConfig();
  c.dataset = "/nonexistent/data.csv";
  try {
    RunExperiment(c);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("pp_admm"), std::string::npos);
  }
}

}  // namespace
}  // namespace padmm
