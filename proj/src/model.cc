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

#include "padmm/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace padmm {
namespace {

void CheckDim(const Vector& v, Eigen::Index d, const char* what) {
  if (v.size() != d) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(d) + ", got " +
                                std::to_string(v.size()));
  }
}

bool HasLossTerm(const LocalObjectiveParams& p) {
  return p.data != nullptr && !p.data->empty();
}

void CheckParams(const Vector& theta, const LocalObjectiveParams& p) {
  if (p.num_agents < 1) {
    throw std::invalid_argument("LocalObjectiveParams: num_agents < 1");
  }
  if (p.data != nullptr) CheckDim(theta, p.data->dimension(), "theta");
}

void CheckAugmented(const Vector& theta, const AugmentedParams& a) {
  const auto d = theta.size();
  CheckDim(a.dual, d, "dual");
  CheckDim(a.self_prev, d, "self_prev");
  for (const auto& v : a.neighbor_prev) CheckDim(v, d, "neighbor_prev");
  if (a.noise_b1.size() != 0) CheckDim(a.noise_b1, d, "noise_b1");
  if (!(a.eta > 0.0)) throw std::invalid_argument("eta must be > 0");
}

// Margins y_n * theta^T x_n.
Vector Margins(const Vector& theta, const Dataset& data) {
  return (data.features() * theta).cwiseProduct(data.labels().cast<double>());
}

double Regularizer(const Vector& theta, const LocalObjectiveParams& p) {
  return p.lambda_hat / p.num_agents * 0.5 * theta.squaredNorm();
}

}  // namespace

double LogisticLoss(double z) {
  // log(1 + e^-z), evaluated on the side where the exponential is <= 1.
  if (z >= 0.0) return std::log1p(std::exp(-z));
  return -z + std::log1p(std::exp(z));
}

double LogisticLossDeriv(double z) {
  // -e^-z / (1 + e^-z) = -1 / (1 + e^z)
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(z));
}

double LocalObjective(const Vector& theta, const LocalObjectiveParams& p) {
  CheckParams(theta, p);
  double loss = 0.0;
  if (HasLossTerm(p)) {
    const Vector m = Margins(theta, *p.data);
    for (const double z : m) loss += LogisticLoss(z);
    loss /= static_cast<double>(m.size());
  }
  return loss + Regularizer(theta, p);
}

double AugmentedValueAndGradient(const Vector& theta,
                                 const LocalObjectiveParams& p,
                                 const AugmentedParams& a, Vector* gradient) {
  CheckParams(theta, p);
  CheckAugmented(theta, a);

  const auto d = theta.size();
  double value = 0.0;
  Vector grad = Vector::Zero(d);

  if (HasLossTerm(p)) {
    const Dataset& data = *p.data;
    const Vector m = Margins(theta, data);
    Vector weights(m.size());
    double loss = 0.0;
    for (Eigen::Index n = 0; n < m.size(); ++n) {
      loss += LogisticLoss(m[n]);
      weights[n] = LogisticLossDeriv(m[n]) * data.labels()[n];
    }
    const double inv_n = 1.0 / static_cast<double>(m.size());
    value += loss * inv_n;
    grad.noalias() += data.features().transpose() * weights * inv_n;
  }

  const double reg_weight = p.lambda_hat / p.num_agents;
  value += reg_weight * 0.5 * theta.squaredNorm();
  grad += reg_weight * theta;

  Vector linear = 2.0 * a.dual;
  if (a.noise_b1.size() != 0) linear += a.noise_b1;
  value += linear.dot(theta);
  grad += linear;

  for (const auto& neighbor : a.neighbor_prev) {
    const Vector diff = theta - 0.5 * (a.self_prev + neighbor);
    value += a.eta * diff.squaredNorm();
    grad += 2.0 * a.eta * diff;
  }

  if (gradient != nullptr) *gradient = std::move(grad);
  return value;
}

double AugmentedObjective(const Vector& theta, const LocalObjectiveParams& p,
                          const AugmentedParams& a) {
  return AugmentedValueAndGradient(theta, p, a, nullptr);
}

Vector AugmentedGradient(const Vector& theta, const LocalObjectiveParams& p,
                         const AugmentedParams& a) {
  Vector g;
  AugmentedValueAndGradient(theta, p, a, &g);
  return g;
}

double ClippedLocalObjective(const Vector& theta,
                             const LocalObjectiveParams& p, double c_loss) {
  if (!(c_loss > 0.0)) throw std::invalid_argument("c_loss must be > 0");
  CheckParams(theta, p);
  double loss = 0.0;
  if (HasLossTerm(p)) {
    const Vector m = Margins(theta, *p.data);
    for (const double z : m) loss += std::min(LogisticLoss(z), c_loss);
    loss /= static_cast<double>(m.size());
  }
  return loss + Regularizer(theta, p);
}

double ClippedQuality(const Vector& theta_prev, const Vector& theta_hat,
                      const LocalObjectiveParams& p, double c_loss) {
  CheckDim(theta_hat, theta_prev.size(), "theta_hat");
  return ClippedLocalObjective(theta_prev, p, c_loss) -
         ClippedLocalObjective(theta_hat, p, c_loss);
}

}  // namespace padmm
