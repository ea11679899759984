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

// Python bindings: budget planning, the accountant, synthetic data and the
// experiment runner.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "padmm/accountant.h"
#include "padmm/data.h"
#include "padmm/experiment.h"
#include "padmm/model.h"
#include "padmm/svt.h"

namespace py = pybind11;

namespace {

padmm::ExperimentConfig ConfigFrom(const std::map<std::string, std::string>& overrides) {
  padmm::ExperimentConfig config;
  for (const auto& [key, value] : overrides) {
    padmm::SetConfigValue(config, key, value);
  }
  config.Validate();
  return config;
}

std::string PlanBudgetJson(const std::string& algorithm, double epsilon,
                           double delta, int rounds,
                           const std::vector<int>& dataset_sizes,
                           const std::vector<int>& degrees, double eta,
                           double beta, double splits,
                           std::optional<int> max_broadcasts,
                           std::optional<std::pair<double, double>> svt_epsilons,
                           const std::string& calibration) {
  padmm::BudgetRequest r;
  r.algorithm = padmm::ParseAlgorithm(algorithm);
  r.epsilon = epsilon;
  r.delta = delta;
  r.rounds = rounds;
  r.dataset_sizes = dataset_sizes;
  r.degrees = degrees;
  r.eta = eta;
  r.beta = beta;
  r.splits = splits;
  r.max_broadcasts = max_broadcasts;
  r.svt_epsilons = svt_epsilons;
  r.calibration = padmm::ParseRhoCalibration(calibration);
  return padmm::PlanToJson(padmm::PlanBudget(r));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differentially private decentralized ADMM simulator (C++ core).";

  py::register_exception<padmm::SolverError>(m, "SolverError",
                                             PyExc_RuntimeError);

  m.def("dp_to_zcdp",
        [](double eps, double delta) { return padmm::DpToZcdp(eps, delta).rho(); },
        "rho implied by (epsilon, delta)-DP.", py::arg("epsilon"),
        py::arg("delta"));
  m.def("zcdp_to_dp",
        [](double rho, double delta) {
          return padmm::ZcdpToDp(padmm::ZcdpCost(rho), delta);
        },
        "epsilon at delta implied by rho-zCDP.", py::arg("rho"),
        py::arg("delta"));
  m.def("zcdp_for_dp_target",
        [](double eps, double delta) {
          return padmm::ZcdpForDpTarget(eps, delta).rho();
        },
        "Largest rho converting back to exactly epsilon.", py::arg("epsilon"),
        py::arg("delta"));
  m.def("gaussian_zcdp",
        [](double sensitivity, double sigma) {
          return padmm::GaussianZcdp(sensitivity, sigma).rho();
        },
        py::arg("sensitivity"), py::arg("sigma"));
  m.def("svt_zcdp",
        [](double eps1, double eps2) { return padmm::SvtZcdp(eps1, eps2).rho(); },
        py::arg("eps1"), py::arg("eps2"));
  m.def("svt_split_ratio", &padmm::SvtSplitRatio, py::arg("c_max"),
        py::arg("eps_total"));
  m.def("logistic_loss", &padmm::LogisticLoss, py::arg("z"));

  m.def("plan_budget_json", &PlanBudgetJson,
        "The budget plan as a JSON string.", py::arg("algorithm"),
        py::arg("epsilon"), py::arg("delta"), py::arg("rounds"),
        py::arg("dataset_sizes"), py::arg("degrees"), py::arg("eta"),
        py::arg("beta"), py::arg("splits"), py::arg("max_broadcasts"),
        py::arg("svt_epsilons"), py::arg("calibration"));

  m.def(
      "synthetic_blobs",
      [](int n, int d, double separation, std::uint64_t seed) {
        const padmm::Dataset data =
            padmm::SyntheticBlobs(n, d, separation, seed);
        return py::make_tuple(padmm::Matrix(data.features()),
                              Eigen::VectorXi(data.labels()));
      },
      "Two Gaussian clusters, preprocessed. Returns (features, labels).",
      py::arg("n"), py::arg("d"), py::arg("separation"), py::arg("seed"));

  m.def("config_keys", &padmm::ConfigKeys);
  m.def(
      "config_text",
      [](const std::map<std::string, std::string>& overrides) {
        return ConfigFrom(overrides).ToText();
      },
      "Validated config as key = value text.", py::arg("overrides"));
  m.def(
      "run_experiment_ndjson",
      [](const std::map<std::string, std::string>& overrides) {
        const padmm::ExperimentConfig config = ConfigFrom(overrides);
        padmm::RunReport report;
        {
          py::gil_scoped_release release;
          report = padmm::RunExperiment(config);
        }
        std::ostringstream out;
        padmm::WriteReport(report, out);
        return out.str();
      },
      "Runs an experiment and returns the newline-delimited JSON report.",
      py::arg("overrides"));
}
