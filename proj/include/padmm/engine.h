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

// Synchronous-round simulation of decentralized consensus ADMM.
//
// Every round each agent reads the same snapshot of its neighbors' last
// shared models, solves its local augmented subproblem, optionally releases a
// new model, and then all agents update their duals from the released
// values. Three variants share the loop:
//
//   RunNonPrivate  exact local solves, every model shared as is.
//   RunPpAdmm      objective perturbation (b1), inexact solve to beta, output
//                  perturbation (b2), shared every round.
//   RunIppAdmm     as PP-ADMM, but a sparse vector gate decides whether the
//                  new model is good enough to share; at most c shares.

#ifndef PADMM_ENGINE_H_
#define PADMM_ENGINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "padmm/accountant.h"
#include "padmm/data.h"
#include "padmm/noise.h"
#include "padmm/solver.h"
#include "padmm/svt.h"
#include "padmm/topology.h"

namespace padmm {

// Local solve failed to reach beta.
class SolverError : public std::runtime_error {
 public:
  SolverError(int round, int agent, double gradient_norm, double beta);
  int round() const { return round_; }
  int agent() const { return agent_; }

 private:
  int round_;
  int agent_;
};

struct EngineOptions {
  double eta = 0.5;
  int rounds = 30;
  // Non-private runs use this value (default 0 is rejected, see below).
  // Private runs default to the plan's floor and reject anything below it.
  std::optional<double> lambda_hat;
  SolverConfig solver;
  std::uint64_t seed = 0;
  NoiseMode noise = NoiseMode::kEnabled;
  // theta_i^0 per agent; zeros when unset.
  std::optional<std::vector<Vector>> initial_theta;
  // Held-out data for the per-round error rate. Not owned.
  const Dataset* test = nullptr;
  // Order in which agents are processed inside a round; identity when empty.
  // The result does not depend on it.
  std::vector<int> update_order;
};

struct SvtSettings {
  double alpha = 1e-3;
  int c_max = 15;
  double c_loss = 2.0;
};

struct IterationTrace {
  int round = 0;  // 1-based: the trace after the round-th update
  double average_loss = 0.0;
  std::optional<double> error_rate_test;
  double consensus_residual = 0.0;
  std::vector<bool> broadcasts;
  std::vector<SvtDecision> decisions;  // IPP-ADMM only
  std::vector<double> cumulative_rho;
};

struct RunResult {
  std::vector<IterationTrace> trace;
  ZcdpLedger ledger;
  std::vector<Vector> theta;  // final theta_i
  std::vector<Vector> dual;   // final lambda_i
  std::vector<int> broadcast_counts;
  double lambda_hat = 0.0;
};

// lambda + (eta / 2) sum_j (theta_self - theta_j).
Vector DualUpdate(const Vector& dual, const Vector& theta_self,
                  std::span<const Vector> neighbor_thetas, double eta);

RunResult RunNonPrivate(std::span<const Dataset> parts, const Graph& graph,
                        const EngineOptions& options);

// Throws std::invalid_argument if the plan was built for different sizes,
// degrees, rounds, eta or beta.
RunResult RunPpAdmm(std::span<const Dataset> parts, const Graph& graph,
                    const BudgetPlan& plan, const EngineOptions& options);

RunResult RunIppAdmm(std::span<const Dataset> parts, const Graph& graph,
                     const BudgetPlan& plan, const SvtSettings& svt,
                     const EngineOptions& options);

// Minimizer of mean loss over `pooled` + (lambda_hat / num_agents) R, which
// is (1/N) sum_i f_i when the agents hold equally sized shares.
Vector CentralizedReference(const Dataset& pooled, double lambda_hat,
                            int num_agents, const SolverConfig& config);

// Minimizer of sum_i f_i over the given shares.
Vector CentralizedReference(std::span<const Dataset> parts, double lambda_hat,
                            const SolverConfig& config);

}  // namespace padmm

#endif  // PADMM_ENGINE_H_
