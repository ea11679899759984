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

// Local ERM objective of one agent and its ADMM-augmented form.
//
//   f_i(theta) = mean_n L(y_n theta^T x_n) + (lambda_hat / N) * 0.5 |theta|^2
//
//   L_aug(theta) = f_i(theta) + (2 dual + b1)^T theta
//                  + eta * sum_j |0.5 (theta_i^t + theta_j^t) - theta|^2
//
// with L(z) = log(1 + exp(-z)). With b1 = 0 the augmented objective is the
// non-private ADMM subproblem.

#ifndef PADMM_MODEL_H_
#define PADMM_MODEL_H_

#include <vector>

#include "padmm/data.h"

namespace padmm {

// Curvature bound of the logistic loss.
inline constexpr double kLogisticCurvatureBound = 0.25;

double LogisticLoss(double z);
// Always in [-1, 0].
double LogisticLossDeriv(double z);

struct LocalObjectiveParams {
  const Dataset* data = nullptr;  // null or empty: no loss term
  double lambda_hat = 0.0;
  int num_agents = 1;
};

struct AugmentedParams {
  Vector dual;                        // lambda_i^t
  Vector self_prev;                   // theta_i^t
  std::vector<Vector> neighbor_prev;  // theta_j^t for j in B_i
  double eta = 0.5;
  Vector noise_b1;                    // empty means zero
};

// All functions below throw std::invalid_argument on dimension mismatch.

double LocalObjective(const Vector& theta, const LocalObjectiveParams& p);

// Value of the augmented objective; fills `gradient` when non-null.
double AugmentedValueAndGradient(const Vector& theta,
                                 const LocalObjectiveParams& p,
                                 const AugmentedParams& a, Vector* gradient);

double AugmentedObjective(const Vector& theta, const LocalObjectiveParams& p,
                          const AugmentedParams& a);
Vector AugmentedGradient(const Vector& theta, const LocalObjectiveParams& p,
                         const AugmentedParams& a);

// f_i with every per-sample loss capped at c_loss (regularizer unclipped).
double ClippedLocalObjective(const Vector& theta,
                             const LocalObjectiveParams& p, double c_loss);

// SVT quality: clipped f_i(theta_prev) - clipped f_i(theta_hat). Its
// sensitivity to one replaced sample is at most 2 * c_loss.
double ClippedQuality(const Vector& theta_prev, const Vector& theta_hat,
                      const LocalObjectiveParams& p, double c_loss);

}  // namespace padmm

#endif  // PADMM_MODEL_H_
