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

#ifndef PADMM_METRICS_H_
#define PADMM_METRICS_H_

#include <span>

#include "padmm/data.h"

namespace padmm {

// Fraction of `test` misclassified by sign(theta^T x), with sign(0) -> +1.
double ErrorRate(const Vector& theta, const Dataset& test);

// ErrorRate of each agent's model, averaged over agents. Throws
// std::invalid_argument on an empty test set or no agents.
double ErrorRate(std::span<const Vector> theta_per_agent,
                 const Dataset& test);

// (1/N) sum_i mean_n L(y theta_i^T x) over each agent's own training data.
// No regularizer term.
double AverageLoss(std::span<const Vector> theta_per_agent,
                   std::span<const Dataset> train_per_agent);

// max_i |theta_i - mean(theta)|_2.
double ConsensusResidual(std::span<const Vector> theta_per_agent);

}  // namespace padmm

#endif  // PADMM_METRICS_H_
