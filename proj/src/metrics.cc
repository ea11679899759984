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

#include "padmm/metrics.h"

#include <algorithm>
#include <stdexcept>

#include "padmm/model.h"

namespace padmm {

double ErrorRate(const Vector& theta, const Dataset& test) {
  if (test.empty()) throw std::invalid_argument("ErrorRate: empty test set");
  if (theta.size() != test.dimension()) {
    throw std::invalid_argument("ErrorRate: dimension mismatch");
  }
  const Vector scores = test.features() * theta;
  int wrong = 0;
  for (Eigen::Index n = 0; n < scores.size(); ++n) {
    const int predicted = scores[n] >= 0.0 ? 1 : -1;
    if (predicted != test.labels()[n]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(test.size());
}

double ErrorRate(std::span<const Vector> theta_per_agent,
                 const Dataset& test) {
  if (theta_per_agent.empty()) throw std::invalid_argument("ErrorRate: no agents");
  double sum = 0.0;
  for (const auto& theta : theta_per_agent) sum += ErrorRate(theta, test);
  return sum / static_cast<double>(theta_per_agent.size());
}

double AverageLoss(std::span<const Vector> theta_per_agent,
                   std::span<const Dataset> train_per_agent) {
  if (theta_per_agent.empty() ||
      theta_per_agent.size() != train_per_agent.size()) {
    throw std::invalid_argument("AverageLoss: agent count mismatch");
  }
  double sum = 0.0;
  for (size_t i = 0; i < theta_per_agent.size(); ++i) {
    sum += LocalObjective(theta_per_agent[i],
                          LocalObjectiveParams{&train_per_agent[i], 0.0, 1});
  }
  return sum / static_cast<double>(theta_per_agent.size());
}

double ConsensusResidual(std::span<const Vector> theta_per_agent) {
  if (theta_per_agent.empty()) return 0.0;
  Vector mean = Vector::Zero(theta_per_agent.front().size());
  for (const auto& t : theta_per_agent) mean += t;
  mean /= static_cast<double>(theta_per_agent.size());
  double worst = 0.0;
  for (const auto& t : theta_per_agent) worst = std::max(worst, (t - mean).norm());
  return worst;
}

}  // namespace padmm
