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

// End-to-end experiment runner: data preparation, budget planning, one
// engine run per seed, aggregation, and the newline-delimited JSON report.

#ifndef PADMM_EXPERIMENT_H_
#define PADMM_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "padmm/accountant.h"
#include "padmm/engine.h"

namespace padmm {

inline constexpr char kSyntheticDataset[] = "synthetic";

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kPpAdmm;

  // "synthetic" or a CSV path.
  std::string dataset = kSyntheticDataset;
  std::string label_column = "label";
  std::string positive_value = "1";
  int synthetic_n = 2000;
  int synthetic_d = 5;
  double synthetic_separation = 5.0;

  int n_agents = 5;
  std::string topology = "random";  // random | ring | complete
  double edge_prob = 0.5;

  double epsilon = 1.0;
  double delta = 1e-4;
  std::optional<double> delta_i1;
  RhoCalibration calibration = RhoCalibration::kDpToZcdp;
  int T = 30;
  double eta = 0.5;
  double splits = 0.001;
  double beta = 3.1622776601683794e-4;  // 10^-3.5
  int max_iterations = 10000;
  // Unset: the privacy floor for private runs, kDefaultNonPrivateLambda
  // otherwise.
  std::optional<double> lambda_hat;

  int c_max = 15;
  double c_loss = 2.0;
  double alpha = 1e-3;
  // Share of rho_total spent on the SVT gate in IPP-ADMM.
  double svt_rho_fraction = 0.5;

  std::vector<std::uint64_t> seeds = {0};
  std::uint64_t data_seed = 1;
  double test_fraction = 0.2;
  std::string output = "-";  // "-" is stdout
  bool insecure_no_noise = false;

  // Throws std::invalid_argument naming the first offending key.
  void Validate() const;

  // Flat `key = value` lines, one per field, in a fixed order. Parsing the
  // result with ParseConfig gives back an equal config.
  std::string ToText() const;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

inline constexpr double kDefaultNonPrivateLambda = 0.01;

// Applies `key = value` lines on top of `base`. Blank lines and `#` comments
// are skipped. Throws std::invalid_argument on unknown keys or bad values,
// with the line number.
ExperimentConfig ParseConfig(const std::string& text,
                             const ExperimentConfig& base = {});
ExperimentConfig LoadConfig(const std::string& path,
                            const ExperimentConfig& base = {});

// Sets one field from its textual value. Throws on unknown key/bad value.
void SetConfigValue(ExperimentConfig& config, const std::string& key,
                    const std::string& value);
std::vector<std::string> ConfigKeys();

// Data, split and topology of an experiment, fixed by data_seed.
struct PreparedData {
  Dataset train;
  Dataset test;
  std::vector<Dataset> parts;
  Graph graph = Graph::FromEdges(1, {});
};

PreparedData PrepareData(const ExperimentConfig& config);

// Budget request for the config and prepared data (private algorithms).
BudgetRequest MakeBudgetRequest(const ExperimentConfig& config,
                                const PreparedData& data);

struct SeedRun {
  std::uint64_t seed = 0;
  RunResult result;
};

struct RoundAggregate {
  int round = 0;
  double loss_mean = 0.0;
  double loss_std = 0.0;  // population std; 0 for a single seed
  double error_mean = 0.0;
  double error_std = 0.0;
};

struct RunReport {
  ExperimentConfig config;
  std::optional<BudgetPlan> plan;
  double lambda_hat = 0.0;
  std::vector<Edge> edges;
  std::vector<int> dataset_sizes;
  std::vector<SeedRun> runs;
  std::vector<RoundAggregate> aggregate;
  // Privacy over the worst seed (all seeds spend the same in PP-ADMM).
  std::vector<double> per_agent_rho;
  double total_rho = 0.0;
  // ZcdpToDp(total_rho, delta); infinite when noise is disabled.
  double epsilon_spent = 0.0;
  std::vector<std::string> warnings;
};

// Throws on invalid configs and propagates module errors with the config
// context prepended.
RunReport RunExperiment(const ExperimentConfig& config);

// One "config" record, one "round" record per seed and round, one
// "aggregate" record per round and a final "summary" record.
void WriteReport(const RunReport& report, std::ostream& out);

// The plan as a single JSON object.
std::string PlanToJson(const BudgetPlan& plan);

// Mean and population standard deviation.
std::pair<double, double> MeanAndStd(const std::vector<double>& values);

}  // namespace padmm

#endif  // PADMM_EXPERIMENT_H_
