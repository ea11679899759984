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

// Zero-concentrated DP accounting and the budget planner that turns a target
// (epsilon, delta) into the noise scales and regularizer of the private ADMM
// variants.

#ifndef PADMM_ACCOUNTANT_H_
#define PADMM_ACCOUNTANT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace padmm {

// A rho-zCDP guarantee. rho is finite and non-negative.
class ZcdpCost {
 public:
  ZcdpCost() = default;
  // Throws std::invalid_argument on negative or non-finite rho.
  explicit ZcdpCost(double rho);

  double rho() const { return rho_; }

  friend ZcdpCost operator+(ZcdpCost a, ZcdpCost b) {
    return ZcdpCost(a.rho_ + b.rho_);
  }
  friend auto operator<=>(const ZcdpCost&, const ZcdpCost&) = default;

 private:
  double rho_ = 0.0;
};

// Gaussian mechanism with L2 sensitivity `sensitivity` and std `sigma`:
// sensitivity^2 / (2 sigma^2).
ZcdpCost GaussianZcdp(double sensitivity, double sigma);

// (epsilon, delta)-DP implies epsilon^2 / (4 ln(1/delta))-zCDP; pure DP
// (delta = 0) implies epsilon^2 / 2.
ZcdpCost DpToZcdp(double epsilon, double delta);

// rho-zCDP implies (rho + 2 sqrt(rho ln(1/delta)), delta)-DP.
double ZcdpToDp(ZcdpCost cost, double delta);

// Largest rho whose ZcdpToDp(rho, delta) equals epsilon.
ZcdpCost ZcdpForDpTarget(double epsilon, double delta);

// Mechanisms on the same data: costs add. Empty input is zero.
ZcdpCost SerialCompose(std::span<const ZcdpCost> costs);
// Mechanisms on disjoint data: the maximum. Throws on empty input.
ZcdpCost ParallelCompose(std::span<const ZcdpCost> costs);

// Cost of an epsilon-DP sparse vector gate, (eps1 + eps2)^2 / 2.
ZcdpCost SvtZcdp(double eps1, double eps2);

// How the total (epsilon, delta) target becomes a total rho.
enum class RhoCalibration {
  // rho = DpToZcdp(epsilon, delta). The experimental protocol's choice; the
  // realised ZcdpToDp guarantee is slightly above epsilon.
  kDpToZcdp,
  // rho = ZcdpForDpTarget(epsilon, delta). ZcdpToDp(rho) == epsilon.
  kExactInverse,
};

std::string ToString(RhoCalibration c);
RhoCalibration ParseRhoCalibration(const std::string& s);

enum class Algorithm { kNonPrivate, kPpAdmm, kIppAdmm };

std::string ToString(Algorithm a);
Algorithm ParseAlgorithm(const std::string& s);

struct BudgetRequest {
  Algorithm algorithm = Algorithm::kPpAdmm;
  double epsilon = 1.0;
  double delta = 1e-4;
  // Delta used for objective perturbation; defaults to `delta`.
  std::optional<double> delta_i1;
  int rounds = 30;                    // T
  std::optional<int> max_broadcasts;  // c, required for IPP-ADMM
  double splits = 0.001;
  std::vector<int> dataset_sizes;     // |D_i| per agent
  std::vector<int> degrees;           // |B_i| per agent
  double eta = 0.5;
  double beta = 3.1622776601683794e-4;  // 10^-3.5
  double c1 = 0.25;
  double eps_i3_fraction = 0.99;
  // (eps1, eps2) of the SVT gate, required for IPP-ADMM.
  std::optional<std::pair<double, double>> svt_epsilons;
  RhoCalibration calibration = RhoCalibration::kDpToZcdp;

  int num_agents() const { return static_cast<int>(dataset_sizes.size()); }
};

struct BudgetPlan {
  Algorithm algorithm = Algorithm::kPpAdmm;
  double epsilon_total = 0.0;
  double delta_total = 0.0;
  int rounds = 0;
  std::optional<int> max_broadcasts;
  double splits = 0.0;
  RhoCalibration calibration = RhoCalibration::kDpToZcdp;

  ZcdpCost rho_total;
  ZcdpCost rho_svt;        // rho'_1, zero for PP-ADMM
  ZcdpCost rho_per_round;  // per iteration (PP) or per broadcast (IPP)
  ZcdpCost rho_i1;
  ZcdpCost rho_i2;
  double epsilon_i1 = 0.0;
  double epsilon_i3 = 0.0;
  double delta_i1 = 0.0;
  double svt_eps1 = 0.0;
  double svt_eps2 = 0.0;
  std::vector<double> sigma_i1;  // per agent
  std::vector<double> sigma_i2;  // per agent
  double lambda_hat_floor = 0.0;

  // Per-agent parameters used to build the plan, kept for consistency checks.
  std::vector<int> dataset_sizes;
  std::vector<int> degrees;
  double eta = 0.0;
  double beta = 0.0;

  int num_agents() const { return static_cast<int>(dataset_sizes.size()); }
  // rho_i1 + rho_i2.
  ZcdpCost PerReleaseCost() const { return rho_i1 + rho_i2; }
};

// Throws std::invalid_argument on malformed input, when IPP-ADMM is
// requested without max_broadcasts or svt_epsilons, or when the SVT cost
// leaves no budget for broadcasts.
BudgetPlan PlanBudget(const BudgetRequest& request);

// Per-agent zCDP spend over one run. Entries only grow.
class ZcdpLedger {
 public:
  enum class IppEvent { kSvtOpen, kBroadcast };

  ZcdpLedger() = default;
  ZcdpLedger(int num_agents, double delta_target);

  int num_agents() const { return static_cast<int>(per_agent_.size()); }
  double delta_target() const { return delta_target_; }
  const std::vector<ZcdpCost>& per_agent() const { return per_agent_; }
  ZcdpCost agent(int i) const;

  void Charge(int agent, ZcdpCost cost);
  // One PP-ADMM iteration: rho_i1 + rho_i2.
  void ChargePpIteration(int agent, const BudgetPlan& plan);
  // kSvtOpen adds rho'_1 and may happen once per agent (throws
  // std::logic_error on a second open); kBroadcast adds rho_i1 + rho_i2.
  void ChargeIpp(int agent, const BudgetPlan& plan, IppEvent event);

  // Parallel composition over agents.
  ZcdpCost Total() const;
  // ZcdpToDp(Total(), delta_target).
  double TotalEpsilon() const;

 private:
  void CheckAgent(int agent) const;

  std::vector<ZcdpCost> per_agent_;
  std::vector<bool> svt_opened_;
  double delta_target_ = 0.0;
};

}  // namespace padmm

#endif  // PADMM_ACCOUNTANT_H_
