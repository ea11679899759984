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

#include "padmm/solver.h"

#include <algorithm>
#include <stdexcept>

namespace padmm {
namespace {

constexpr double kArmijo = 1e-4;
// Steps below this are treated as a stalled line search.
constexpr double kMinStep = 1e-20;

}  // namespace

void SolverConfig::Validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("solver beta must be > 0");
  if (max_iterations < 1) {
    throw std::invalid_argument("solver max_iterations must be >= 1");
  }
  if (!(initial_step > 0.0)) {
    throw std::invalid_argument("solver initial_step must be > 0");
  }
}

SolverResult Minimize(const ValueAndGradient& objective, const Vector& start,
                      const SolverConfig& config) {
  config.Validate();
  if (!start.allFinite()) throw std::invalid_argument("Minimize: bad start");

  SolverResult r;
  r.theta = start;
  Vector grad;
  r.value = objective(r.theta, &grad);
  r.gradient_norm = grad.norm();

  // The trial step grows back towards initial_step after each success so a
  // single short step early on does not slow every later iteration.
  double step = config.initial_step;
  Vector trial;
  Vector trial_grad;
  while (r.gradient_norm > config.beta && r.iterations < config.max_iterations) {
    const double slope = grad.squaredNorm();
    double trial_value = 0.0;
    for (;;) {
      trial = r.theta - step * grad;
      trial_value = objective(trial, &trial_grad);
      if (trial_value <= r.value - kArmijo * step * slope) break;
      step *= 0.5;
      if (step < kMinStep) {
        r.converged = false;
        return r;
      }
    }
    r.theta.swap(trial);
    grad.swap(trial_grad);
    r.value = trial_value;
    r.gradient_norm = grad.norm();
    ++r.iterations;
    step = std::min(2.0 * step, config.initial_step);
  }
  r.converged = r.gradient_norm <= config.beta;
  return r;
}

}  // namespace padmm
