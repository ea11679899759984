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

#include "padmm/engine.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "padmm/metrics.h"
#include "padmm/model.h"

namespace padmm {

SolverError::SolverError(int round, int agent, double gradient_norm,
                         double beta)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "local solve did not reach beta=" << beta
            << " (gradient norm " << gradient_norm << ")";
        if (agent >= 0) msg << " at round " << round << ", agent " << agent;
        return msg.str();
      }()),
      round_(round),
      agent_(agent) {}

Vector DualUpdate(const Vector& dual, const Vector& theta_self,
                  std::span<const Vector> neighbor_thetas, double eta) {
  if (theta_self.size() != dual.size()) {
    throw std::invalid_argument("DualUpdate: dimension mismatch");
  }
  Vector disagreement = Vector::Zero(dual.size());
  for (const auto& theta_j : neighbor_thetas) {
    if (theta_j.size() != dual.size()) {
      throw std::invalid_argument("DualUpdate: dimension mismatch");
    }
    disagreement += theta_self - theta_j;
  }
  return dual + 0.5 * eta * disagreement;
}

namespace {

enum class Variant { kNonPrivate, kPp, kIpp };

void Check(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

int ValidateInputs(std::span<const Dataset> parts, const Graph& graph,
                   const EngineOptions& options) {
  Check(!parts.empty(), "engine: no agents");
  Check(static_cast<int>(parts.size()) == graph.size(),
        "engine: " + std::to_string(parts.size()) + " datasets for a graph of " +
            std::to_string(graph.size()) + " agents");
  const int d = parts.front().dimension();
  for (const auto& p : parts) {
    Check(!p.empty(), "engine: an agent has no data");
    Check(p.dimension() == d, "engine: agents disagree on dimension");
  }
  Check(options.rounds >= 0, "engine: rounds must be >= 0");
  Check(options.eta > 0.0, "engine: eta must be > 0");
  options.solver.Validate();
  if (options.initial_theta) {
    Check(options.initial_theta->size() == parts.size(),
          "engine: initial_theta has the wrong number of agents");
    for (const auto& t : *options.initial_theta) {
      Check(t.size() == d && t.allFinite(), "engine: bad initial_theta");
    }
  }
  if (options.test != nullptr) {
    Check(options.test->dimension() == d, "engine: test dimension mismatch");
  }
  if (!options.update_order.empty()) {
    std::vector<int> sorted = options.update_order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> identity(parts.size());
    std::iota(identity.begin(), identity.end(), 0);
    Check(sorted == identity, "engine: update_order is not a permutation");
  }
  return d;
}

void ValidatePlan(std::span<const Dataset> parts, const Graph& graph,
                  const BudgetPlan& plan, const EngineOptions& options) {
  Check(plan.num_agents() == static_cast<int>(parts.size()),
        "plan/graph mismatch: plan is for " + std::to_string(plan.num_agents()) +
            " agents");
  for (int i = 0; i < plan.num_agents(); ++i) {
    Check(plan.dataset_sizes[i] == parts[i].size(),
          "plan/data mismatch: dataset size of agent " + std::to_string(i));
    Check(plan.degrees[i] == graph.Degree(i),
          "plan/graph mismatch: degree of agent " + std::to_string(i));
  }
  Check(plan.eta == options.eta, "plan/options mismatch: eta");
  Check(plan.beta == options.solver.beta, "plan/options mismatch: beta");
}

struct AgentStreams {
  RngStream objective;
  RngStream output;
  RngStream threshold;
  RngStream query;

  AgentStreams(std::uint64_t seed, int agent, NoiseMode mode)
      : objective(seed, StreamId(agent, NoisePurpose::kObjective), mode),
        output(seed, StreamId(agent, NoisePurpose::kOutput), mode),
        threshold(seed, StreamId(agent, NoisePurpose::kSvtThreshold), mode),
        query(seed, StreamId(agent, NoisePurpose::kSvtQuery), mode) {}
};

RunResult RunRounds(Variant variant, std::span<const Dataset> parts,
                    const Graph& graph, const BudgetPlan* plan,
                    const SvtSettings* svt, const EngineOptions& options) {
  const int d = ValidateInputs(parts, graph, options);
  const int n = static_cast<int>(parts.size());

  RunResult result;
  if (variant == Variant::kNonPrivate) {
    Check(options.lambda_hat.has_value() && *options.lambda_hat >= 0.0,
          "non-private run needs lambda_hat >= 0");
    result.lambda_hat = *options.lambda_hat;
    result.ledger = ZcdpLedger(n, 1e-4);  // stays at zero
  } else {
    ValidatePlan(parts, graph, *plan, options);
    result.lambda_hat = options.lambda_hat.value_or(plan->lambda_hat_floor);
    Check(result.lambda_hat >= plan->lambda_hat_floor,
          "lambda_hat " + std::to_string(result.lambda_hat) +
              " is below the privacy floor " +
              std::to_string(plan->lambda_hat_floor));
    result.ledger = ZcdpLedger(n, plan->delta_total);
  }
  if (variant == Variant::kPp) {
    Check(plan->algorithm == Algorithm::kPpAdmm,
          "plan was not built for PP-ADMM");
    Check(plan->rounds == options.rounds, "plan/options mismatch: rounds");
  }

  std::vector<int> order = options.update_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }

  std::vector<Vector> theta = options.initial_theta.value_or(
      std::vector<Vector>(n, Vector::Zero(d)));
  std::vector<Vector> dual(n, Vector::Zero(d));
  // Last value each agent shared; what its neighbors see.
  std::vector<Vector> board = theta;
  result.broadcast_counts.assign(n, 0);

  std::vector<AgentStreams> streams;
  streams.reserve(n);
  for (int i = 0; i < n; ++i) streams.emplace_back(options.seed, i, options.noise);

  std::vector<SvtGate> gates;
  if (variant == Variant::kIpp) {
    Check(plan->algorithm == Algorithm::kIppAdmm,
          "plan was not built for IPP-ADMM");
    Check(plan->max_broadcasts == svt->c_max,
          "plan/options mismatch: broadcast limit c");
    for (int i = 0; i < n; ++i) {
      gates.emplace_back(svt->alpha, svt->c_max, plan->svt_eps1,
                         plan->svt_eps2, svt->c_loss, streams[i].threshold);
      result.ledger.ChargeIpp(i, *plan, ZcdpLedger::IppEvent::kSvtOpen);
    }
  }

  for (int t = 0; t < options.rounds; ++t) {
    std::vector<Vector> next = theta;
    std::vector<bool> shared(n, false);
    std::vector<SvtDecision> decisions;
    if (variant == Variant::kIpp) decisions.assign(n, SvtDecision::kBelow);

    for (const int i : order) {
      if (variant == Variant::kIpp && gates[i].exhausted()) {
        decisions[i] = SvtDecision::kExhausted;
        continue;
      }
      const LocalObjectiveParams local{&parts[i], result.lambda_hat, n};
      AugmentedParams aug;
      aug.dual = dual[i];
      aug.self_prev = theta[i];
      aug.eta = options.eta;
      for (const int j : graph.Neighbors(i)) aug.neighbor_prev.push_back(board[j]);
      if (variant != Variant::kNonPrivate) {
        aug.noise_b1 = streams[i].objective.Gaussian(plan->sigma_i1[i], d);
      }

      const SolverResult solved = Minimize(
          [&](const Vector& x, Vector* g) {
            return AugmentedValueAndGradient(x, local, aug, g);
          },
          theta[i], options.solver);
      if (!solved.converged) {
        throw SolverError(t + 1, i, solved.gradient_norm, options.solver.beta);
      }

      switch (variant) {
        case Variant::kNonPrivate:
          next[i] = solved.theta;
          shared[i] = true;
          break;
        case Variant::kPp:
          next[i] = solved.theta + streams[i].output.Gaussian(plan->sigma_i2[i], d);
          shared[i] = true;
          result.ledger.ChargePpIteration(i, *plan);
          break;
        case Variant::kIpp: {
          const double quality =
              ClippedQuality(theta[i], solved.theta, local, svt->c_loss);
          decisions[i] = gates[i].Check(quality, streams[i].query);
          if (decisions[i] == SvtDecision::kAbove) {
            next[i] =
                solved.theta + streams[i].output.Gaussian(plan->sigma_i2[i], d);
            shared[i] = true;
            result.ledger.ChargeIpp(i, *plan, ZcdpLedger::IppEvent::kBroadcast);
          }
          break;
        }
      }
    }

    // Deliver this round's messages; silent agents leave their stale entry.
    for (int i = 0; i < n; ++i) {
      if (shared[i]) {
        board[i] = next[i];
        ++result.broadcast_counts[i];
      }
    }
    for (int i = 0; i < n; ++i) {
      std::vector<Vector> received;
      for (const int j : graph.Neighbors(i)) received.push_back(board[j]);
      dual[i] = DualUpdate(dual[i], next[i], received, options.eta);
    }
    theta = std::move(next);

    IterationTrace trace;
    trace.round = t + 1;
    trace.average_loss = AverageLoss(theta, parts);
    if (options.test != nullptr) {
      trace.error_rate_test = ErrorRate(theta, *options.test);
    }
    trace.consensus_residual = ConsensusResidual(theta);
    trace.broadcasts = shared;
    trace.decisions = std::move(decisions);
    for (const auto& c : result.ledger.per_agent()) {
      trace.cumulative_rho.push_back(c.rho());
    }
    result.trace.push_back(std::move(trace));
  }

  result.theta = std::move(theta);
  result.dual = std::move(dual);
  return result;
}

}  // namespace

RunResult RunNonPrivate(std::span<const Dataset> parts, const Graph& graph,
                        const EngineOptions& options) {
  return RunRounds(Variant::kNonPrivate, parts, graph, nullptr, nullptr,
                   options);
}

RunResult RunPpAdmm(std::span<const Dataset> parts, const Graph& graph,
                    const BudgetPlan& plan, const EngineOptions& options) {
  return RunRounds(Variant::kPp, parts, graph, &plan, nullptr, options);
}

RunResult RunIppAdmm(std::span<const Dataset> parts, const Graph& graph,
                     const BudgetPlan& plan, const SvtSettings& svt,
                     const EngineOptions& options) {
  return RunRounds(Variant::kIpp, parts, graph, &plan, &svt, options);
}

Vector CentralizedReference(const Dataset& pooled, double lambda_hat,
                            int num_agents, const SolverConfig& config) {
  Check(!pooled.empty(), "CentralizedReference: empty data");
  Check(lambda_hat >= 0.0, "CentralizedReference: lambda_hat must be >= 0");
  const int d = pooled.dimension();
  const LocalObjectiveParams local{&pooled, lambda_hat, num_agents};
  AugmentedParams aug;
  aug.dual = Vector::Zero(d);
  aug.self_prev = Vector::Zero(d);
  const SolverResult r = Minimize(
      [&](const Vector& x, Vector* g) {
        return AugmentedValueAndGradient(x, local, aug, g);
      },
      Vector::Zero(d), config);
  if (!r.converged) throw SolverError(0, -1, r.gradient_norm, config.beta);
  return r.theta;
}

Vector CentralizedReference(std::span<const Dataset> parts, double lambda_hat,
                            const SolverConfig& config) {
  Check(!parts.empty(), "CentralizedReference: no parts");
  Check(lambda_hat >= 0.0, "CentralizedReference: lambda_hat must be >= 0");
  const int n = static_cast<int>(parts.size());
  const int d = parts.front().dimension();
  AugmentedParams aug;
  aug.dual = Vector::Zero(d);
  aug.self_prev = Vector::Zero(d);
  const SolverResult r = Minimize(
      [&](const Vector& x, Vector* g) {
        double value = 0.0;
        Vector total = Vector::Zero(d);
        Vector part_grad;
        for (const auto& p : parts) {
          const LocalObjectiveParams local{&p, lambda_hat, n};
          value += AugmentedValueAndGradient(x, local, aug, &part_grad);
          total += part_grad;
        }
        *g = std::move(total);
        return value;
      },
      Vector::Zero(d), config);
  if (!r.converged) throw SolverError(0, -1, r.gradient_norm, config.beta);
  return r.theta;
}

}  // namespace padmm
