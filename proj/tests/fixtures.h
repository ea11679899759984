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

// Independent oracles shared by the unit tests and the acceptance binary.
// None of them call into the code path they check.

#ifndef PADMM_TESTS_FIXTURES_H_
#define PADMM_TESTS_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "padmm/data.h"
#include "padmm/model.h"
#include "padmm/noise.h"

namespace padmm::testing {

// Central differences of AugmentedObjective, step h per coordinate.
inline Vector FiniteDifferenceGradient(const Vector& theta,
                                       const LocalObjectiveParams& p,
                                       const AugmentedParams& a,
                                       double h = 1e-5) {
  Vector g(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    Vector plus = theta;
    Vector minus = theta;
    plus[k] += h;
    minus[k] -= h;
    g[k] = (AugmentedObjective(plus, p, a) - AugmentedObjective(minus, p, a)) /
           (2.0 * h);
  }
  return g;
}

inline Vector RandomVector(RngStream& rng, int d, double scale) {
  Vector v(d);
  for (int k = 0; k < d; ++k) v[k] = scale * rng.StandardNormal();
  return v;
}

// A random labeled dataset with rows in the unit ball.
inline Dataset RandomDataset(RngStream& rng, int n, int d) {
  Matrix x(n, d);
  Eigen::VectorXi y(n);
  for (int i = 0; i < n; ++i) {
    Vector row = RandomVector(rng, d, 1.0);
    const double norm = row.norm();
    if (norm > 1.0) row /= norm;
    x.row(i) = row.transpose();
    y[i] = rng.Uniform() < 0.5 ? -1 : 1;
  }
  return Dataset(std::move(x), std::move(y));
}

// One random evaluation point for the augmented objective.
struct AugmentedCase {
  Dataset data;
  LocalObjectiveParams params;
  AugmentedParams aug;
  Vector theta;
};

inline AugmentedCase RandomAugmentedCase(RngStream& rng) {
  AugmentedCase c;
  const int d = 1 + static_cast<int>(rng.UniformIndex(6));
  const int n = 1 + static_cast<int>(rng.UniformIndex(40));
  const int neighbors = static_cast<int>(rng.UniformIndex(4));
  c.data = RandomDataset(rng, n, d);
  c.params = {&c.data, 2.0 * rng.Uniform(),
              1 + static_cast<int>(rng.UniformIndex(5))};
  c.aug.dual = RandomVector(rng, d, 0.5);
  c.aug.self_prev = RandomVector(rng, d, 1.0);
  for (int j = 0; j < neighbors; ++j) {
    c.aug.neighbor_prev.push_back(RandomVector(rng, d, 1.0));
  }
  c.aug.eta = 0.1 + rng.Uniform();
  if (rng.Uniform() < 0.5) c.aug.noise_b1 = RandomVector(rng, d, 0.3);
  c.theta = RandomVector(rng, d, 2.0);
  return c;
}

// max |g - fd| / max(1, |fd|), the relative error used for gradient checks.
inline double GradientRelativeError(const Vector& analytic,
                                    const Vector& numeric) {
  return (analytic - numeric).norm() / std::max(1.0, numeric.norm());
}

// Largest |quality(D) - quality(D')| over every D' that replaces one sample
// of D with one sample from `pool`.
inline double MaxQualityChange(const Dataset& data,
                               const std::vector<Sample>& pool,
                               const Vector& theta_prev,
                               const Vector& theta_hat, double c_loss,
                               double lambda_hat, int num_agents) {
  const LocalObjectiveParams base{&data, lambda_hat, num_agents};
  const double q = ClippedQuality(theta_prev, theta_hat, base, c_loss);
  double worst = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    for (const Sample& s : pool) {
      const Dataset neighbor = data.WithReplaced(i, s);
      const LocalObjectiveParams p{&neighbor, lambda_hat, num_agents};
      worst = std::max(
          worst, std::abs(ClippedQuality(theta_prev, theta_hat, p, c_loss) - q));
    }
  }
  return worst;
}

}  // namespace padmm::testing

#endif  // PADMM_TESTS_FIXTURES_H_
