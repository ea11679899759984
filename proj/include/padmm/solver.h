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

#ifndef PADMM_SOLVER_H_
#define PADMM_SOLVER_H_

#include <cmath>
#include <functional>

#include "padmm/data.h"

namespace padmm {

struct SolverConfig {
  double beta = std::pow(10.0, -3.5);  // L2 gradient norm threshold
  int max_iterations = 10000;
  double initial_step = 1.0;

  // Throws std::invalid_argument unless beta > 0, max_iterations >= 1 and
  // initial_step > 0.
  void Validate() const;
};

// Returns f(theta) and writes the gradient into *gradient.
using ValueAndGradient =
    std::function<double(const Vector& theta, Vector* gradient)>;

struct SolverResult {
  Vector theta;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  // gradient_norm <= beta. When false, `theta` is the last iterate.
  bool converged = false;
};

// Gradient descent with Armijo backtracking (step halving, constant 1e-4).
// Stops as soon as |grad| <= beta. Deterministic.
SolverResult Minimize(const ValueAndGradient& objective, const Vector& start,
                      const SolverConfig& config);

}  // namespace padmm

#endif  // PADMM_SOLVER_H_
