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

// padmm: command-line front end.
//
//   padmm run --config exp.cfg [--epsilon 10 --seeds 0,1,2 ...]
//   padmm plan --epsilon 1 --delta 1e-4 --T 30 --sizes 7000,7000 --degrees 1,1
//   padmm validate --config exp.cfg
//
// Every config key is also a flag of the same name (underscores or dashes).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padmm/accountant.h"
#include "padmm/experiment.h"

namespace {

using padmm::ExperimentConfig;

// Registers one string-valued flag per config key on `app`.
void AddConfigFlags(CLI::App* app, std::map<std::string, std::string>* values) {
  for (const auto& key : padmm::ConfigKeys()) {
    std::string names = "--" + key;
    std::string dashed = key;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    if (dashed != key) names += ",--" + dashed;
    if (key == "insecure_no_noise") {
      app->add_flag_callback(
             names, [values, key] { (*values)[key] = "true"; },
             "Disable all privacy noise (NOT private; debugging only)")
          ->group("Config overrides");
      continue;
    }
    app->add_option_function<std::string>(
           names, [values, key](const std::string& v) { (*values)[key] = v; },
           "Override config key '" + key + "'")
        ->group("Config overrides");
  }
}

ExperimentConfig BuildConfig(const std::string& path,
                             const std::map<std::string, std::string>& values) {
  ExperimentConfig config =
      path.empty() ? ExperimentConfig{} : padmm::LoadConfig(path);
  for (const auto& [key, value] : values) {
    padmm::SetConfigValue(config, key, value);
  }
  config.Validate();
  return config;
}

int RunCommand(const ExperimentConfig& config) {
  const padmm::RunReport report = padmm::RunExperiment(config);
  for (const auto& w : report.warnings) std::cerr << "WARNING: " << w << "\n";
  if (config.output == "-") {
    padmm::WriteReport(report, std::cout);
    std::cout.flush();
    return std::cout ? 0 : 1;
  }
  std::ofstream out(config.output);
  if (!out) {
    std::cerr << "error: cannot open output " << config.output << "\n";
    return 1;
  }
  padmm::WriteReport(report, out);
  out.close();
  if (!out) {
    std::cerr << "error: failed writing " << config.output << "\n";
    return 1;
  }
  return 0;
}

int PlanCommand(const ExperimentConfig& config, const std::vector<int>& sizes,
                const std::vector<int>& degrees) {
  if (config.algorithm == padmm::Algorithm::kNonPrivate) {
    std::cerr << "error: plan needs a private algorithm (pp or ipp)\n";
    return 2;
  }
  padmm::BudgetRequest request;
  if (sizes.empty() && degrees.empty()) {
    request = padmm::MakeBudgetRequest(config, padmm::PrepareData(config));
  } else {
    if (sizes.size() != degrees.size()) {
      std::cerr << "error: --sizes and --degrees need the same length\n";
      return 2;
    }
    // Explicit shares replace whatever the (empty) data would provide.
    request = padmm::MakeBudgetRequest(config, padmm::PreparedData{});
    request.dataset_sizes = sizes;
    request.degrees = degrees;
  }
  const padmm::BudgetPlan plan = padmm::PlanBudget(request);
  std::cout << padmm::PlanToJson(plan) << "\n";
  return 0;
}

int ValidateCommand(const ExperimentConfig& config) {
  const padmm::PreparedData data = padmm::PrepareData(config);
  std::cout << "config: ok\n";
  std::cout << "train: " << data.train.size() << " samples, dimension "
            << data.train.dimension() << "\n";
  std::cout << "test: " << data.test.size() << " samples\n";
  std::cout << "graph: " << data.graph.size() << " agents, "
            << data.graph.num_edges() << " edges\n";
  if (config.algorithm != padmm::Algorithm::kNonPrivate) {
    const padmm::BudgetPlan plan =
        padmm::PlanBudget(padmm::MakeBudgetRequest(config, data));
    std::cout << "plan: rho_total " << plan.rho_total.rho()
              << ", lambda_hat floor " << plan.lambda_hat_floor << "\n";
    if (config.lambda_hat && *config.lambda_hat < plan.lambda_hat_floor) {
      std::cerr << "error: lambda_hat " << *config.lambda_hat
                << " is below the privacy floor " << plan.lambda_hat_floor
                << "\n";
      return 1;
    }
  }
  if (config.insecure_no_noise) {
    std::cerr << "WARNING: insecure_no_noise is set; runs are NOT private\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private decentralized ADMM simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> overrides;

  CLI::App* run = app.add_subcommand("run", "Run an experiment");
  run->add_option("--config", config_path, "Config file (key = value lines)");
  AddConfigFlags(run, &overrides);

  CLI::App* plan = app.add_subcommand("plan", "Print the privacy budget plan");
  std::vector<int> sizes;
  std::vector<int> degrees;
  plan->add_option("--config", config_path, "Config file (key = value lines)");
  plan->add_option("--sizes", sizes, "Per-agent dataset sizes")->delimiter(',');
  plan->add_option("--degrees", degrees, "Per-agent neighbor counts")
      ->delimiter(',');
  AddConfigFlags(plan, &overrides);

  CLI::App* validate =
      app.add_subcommand("validate", "Check a config without running");
  validate->add_option("--config", config_path, "Config file")->required();
  AddConfigFlags(validate, &overrides);

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig config = BuildConfig(config_path, overrides);
    if (run->parsed()) return RunCommand(config);
    if (plan->parsed()) return PlanCommand(config, sizes, degrees);
    return ValidateCommand(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
