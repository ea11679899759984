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

#include "padmm/accountant.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace padmm {
namespace {

// Constant of the regularizer floor lambda_hat >= 2.8 N c1 / (gap |D_i|).
constexpr double kRegularizerConstant = 2.8;

void Require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("PlanBudget: " + message);
}

bool InOpenUnit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

ZcdpCost::ZcdpCost(double rho) : rho_(rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("zCDP rho must be finite and >= 0");
  }
}

ZcdpCost GaussianZcdp(double sensitivity, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(sensitivity >= 0.0)) {
    throw std::invalid_argument("sensitivity must be >= 0");
  }
  return ZcdpCost(sensitivity * sensitivity / (2.0 * sigma * sigma));
}

ZcdpCost DpToZcdp(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must be in [0, 1)");
  }
  if (delta == 0.0) return ZcdpCost(0.5 * epsilon * epsilon);
  return ZcdpCost(epsilon * epsilon / (4.0 * std::log(1.0 / delta)));
}

double ZcdpToDp(ZcdpCost cost, double delta) {
  if (!InOpenUnit(delta)) throw std::invalid_argument("delta must be in (0, 1)");
  const double rho = cost.rho();
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

ZcdpCost ZcdpForDpTarget(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!InOpenUnit(delta)) throw std::invalid_argument("delta must be in (0, 1)");
  // rho + 2 sqrt(rho L) = eps  <=>  sqrt(rho) = sqrt(L + eps) - sqrt(L).
  const double l = std::log(1.0 / delta);
  // eps / (sqrt(L + eps) + sqrt(L)) avoids cancellation.
  const double root = epsilon / (std::sqrt(l + epsilon) + std::sqrt(l));
  return ZcdpCost(root * root);
}

ZcdpCost SerialCompose(std::span<const ZcdpCost> costs) {
  ZcdpCost total;
  for (const auto& c : costs) total = total + c;
  return total;
}

ZcdpCost ParallelCompose(std::span<const ZcdpCost> costs) {
  if (costs.empty()) {
    throw std::invalid_argument("ParallelCompose: empty list");
  }
  return *std::max_element(costs.begin(), costs.end());
}

ZcdpCost SvtZcdp(double eps1, double eps2) {
  if (!(eps1 > 0.0 && eps2 > 0.0)) {
    throw std::invalid_argument("SVT epsilons must be > 0");
  }
  const double e = eps1 + eps2;
  return ZcdpCost(0.5 * e * e);
}

std::string ToString(RhoCalibration c) {
  switch (c) {
    case RhoCalibration::kDpToZcdp:
      return "dp_to_zcdp";
    case RhoCalibration::kExactInverse:
      return "exact";
  }
  return "unknown";
}

RhoCalibration ParseRhoCalibration(const std::string& s) {
  if (s == "dp_to_zcdp") return RhoCalibration::kDpToZcdp;
  if (s == "exact") return RhoCalibration::kExactInverse;
  throw std::invalid_argument("unknown calibration '" + s +
                              "' (expected dp_to_zcdp or exact)");
}

std::string ToString(Algorithm a) {
  switch (a) {
    case Algorithm::kNonPrivate:
      return "nonprivate";
    case Algorithm::kPpAdmm:
      return "pp_admm";
    case Algorithm::kIppAdmm:
      return "ipp_admm";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(const std::string& s) {
  if (s == "nonprivate") return Algorithm::kNonPrivate;
  if (s == "pp_admm") return Algorithm::kPpAdmm;
  if (s == "ipp_admm") return Algorithm::kIppAdmm;
  throw std::invalid_argument("unknown algorithm '" + s +
                              "' (expected nonprivate, pp_admm or ipp_admm)");
}

BudgetPlan PlanBudget(const BudgetRequest& req) {
  Require(req.algorithm != Algorithm::kNonPrivate,
          "the non-private algorithm has no budget");
  Require(req.epsilon > 0.0 && std::isfinite(req.epsilon), "epsilon must be > 0");
  Require(InOpenUnit(req.delta), "delta must be in (0, 1)");
  const double delta_i1 = req.delta_i1.value_or(req.delta);
  Require(InOpenUnit(delta_i1), "delta_i1 must be in (0, 1)");
  Require(req.rounds >= 1, "T must be >= 1");
  Require(InOpenUnit(req.splits), "splits must be in (0, 1)");
  Require(!req.dataset_sizes.empty(), "no agents");
  Require(req.degrees.size() == req.dataset_sizes.size(),
          "degrees and dataset sizes differ in length");
  for (const int s : req.dataset_sizes) Require(s > 0, "empty agent dataset");
  for (const int g : req.degrees) Require(g >= 0, "negative degree");
  Require(req.eta > 0.0, "eta must be > 0");
  Require(req.beta > 0.0, "beta must be > 0");
  Require(req.c1 > 0.0, "c1 must be > 0");
  Require(InOpenUnit(req.eps_i3_fraction), "eps_i3 fraction must be in (0, 1)");

  BudgetPlan plan;
  plan.algorithm = req.algorithm;
  plan.epsilon_total = req.epsilon;
  plan.delta_total = req.delta;
  plan.rounds = req.rounds;
  plan.splits = req.splits;
  plan.calibration = req.calibration;
  plan.delta_i1 = delta_i1;
  plan.dataset_sizes = req.dataset_sizes;
  plan.degrees = req.degrees;
  plan.eta = req.eta;
  plan.beta = req.beta;

  plan.rho_total = req.calibration == RhoCalibration::kDpToZcdp
                       ? DpToZcdp(req.epsilon, req.delta)
                       : ZcdpForDpTarget(req.epsilon, req.delta);

  double per_release = 0.0;
  if (req.algorithm == Algorithm::kPpAdmm) {
    per_release = plan.rho_total.rho() / req.rounds;
  } else {
    Require(req.max_broadcasts.has_value(),
            "IPP-ADMM needs a broadcast limit c");
    Require(req.svt_epsilons.has_value(), "IPP-ADMM needs SVT epsilons");
    const int c = *req.max_broadcasts;
    Require(c >= 1 && c <= req.rounds, "broadcast limit c must be in [1, T]");
    plan.max_broadcasts = c;
    plan.svt_eps1 = req.svt_epsilons->first;
    plan.svt_eps2 = req.svt_epsilons->second;
    plan.rho_svt = SvtZcdp(plan.svt_eps1, plan.svt_eps2);
    Require(plan.rho_svt.rho() < plan.rho_total.rho(),
            "SVT cost " + std::to_string(plan.rho_svt.rho()) +
                " leaves no budget (total rho " +
                std::to_string(plan.rho_total.rho()) + ")");
    per_release = (plan.rho_total.rho() - plan.rho_svt.rho()) / c;
  }
  plan.rho_per_round = ZcdpCost(per_release);
  plan.rho_i2 = ZcdpCost(req.splits * per_release);
  plan.rho_i1 = ZcdpCost(per_release - plan.rho_i2.rho());

  plan.epsilon_i1 = ZcdpToDp(plan.rho_i1, delta_i1);
  plan.epsilon_i3 = req.eps_i3_fraction * plan.epsilon_i1;

  const int n = req.num_agents();
  const double gap = plan.epsilon_i1 - plan.epsilon_i3;
  for (int i = 0; i < n; ++i) {
    plan.lambda_hat_floor =
        std::max(plan.lambda_hat_floor,
                 kRegularizerConstant * n * req.c1 / (gap * req.dataset_sizes[i]));
  }

  const double objective_numerator =
      2.0 * std::sqrt(2.0 * std::log(1.25 / delta_i1));
  const double output_scale = std::sqrt(2.0 * plan.rho_i2.rho());
  for (int i = 0; i < n; ++i) {
    plan.sigma_i1.push_back(objective_numerator /
                            (req.dataset_sizes[i] * plan.epsilon_i3));
    plan.sigma_i2.push_back(
        req.beta / (output_scale * (plan.lambda_hat_floor / n +
                                    2.0 * req.eta * req.degrees[i])));
  }
  return plan;
}

ZcdpLedger::ZcdpLedger(int num_agents, double delta_target)
    : per_agent_(num_agents),
      svt_opened_(num_agents, false),
      delta_target_(delta_target) {
  if (num_agents < 1) throw std::invalid_argument("ledger needs >= 1 agent");
  if (!InOpenUnit(delta_target)) {
    throw std::invalid_argument("ledger delta must be in (0, 1)");
  }
}

void ZcdpLedger::CheckAgent(int agent) const {
  if (agent < 0 || agent >= num_agents()) {
    throw std::out_of_range("ledger agent " + std::to_string(agent));
  }
}

ZcdpCost ZcdpLedger::agent(int i) const {
  CheckAgent(i);
  return per_agent_[i];
}

void ZcdpLedger::Charge(int agent, ZcdpCost cost) {
  CheckAgent(agent);
  per_agent_[agent] = per_agent_[agent] + cost;
}

void ZcdpLedger::ChargePpIteration(int agent, const BudgetPlan& plan) {
  Charge(agent, plan.PerReleaseCost());
}

void ZcdpLedger::ChargeIpp(int agent, const BudgetPlan& plan, IppEvent event) {
  CheckAgent(agent);
  if (event == IppEvent::kSvtOpen) {
    if (svt_opened_[agent]) {
      throw std::logic_error("SVT gate of agent " + std::to_string(agent) +
                             " already charged");
    }
    svt_opened_[agent] = true;
    Charge(agent, plan.rho_svt);
  } else {
    Charge(agent, plan.PerReleaseCost());
  }
}

ZcdpCost ZcdpLedger::Total() const { return ParallelCompose(per_agent_); }

double ZcdpLedger::TotalEpsilon() const {
  return ZcdpToDp(Total(), delta_target_);
}

}  // namespace padmm
