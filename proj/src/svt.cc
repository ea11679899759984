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

#include "padmm/svt.h"

#include <cmath>
#include <stdexcept>

namespace padmm {

std::string ToString(SvtDecision d) {
  switch (d) {
    case SvtDecision::kAbove:
      return "above";
    case SvtDecision::kBelow:
      return "below";
    case SvtDecision::kExhausted:
      return "exhausted";
  }
  return "unknown";
}

std::pair<double, double> SvtSplitRatio(int c_max, double eps_total) {
  if (c_max < 1) throw std::invalid_argument("SVT c must be >= 1");
  if (!(eps_total > 0.0)) throw std::invalid_argument("SVT epsilon must be > 0");
  const double ratio = std::cbrt(4.0 * c_max * c_max);  // (2c)^(2/3)
  const double eps1 = eps_total / (1.0 + ratio);
  return {eps1, eps_total - eps1};
}

SvtGate::SvtGate(double alpha, int c_max, double eps1, double eps2,
                 double c_loss, RngStream& threshold_rng)
    : alpha_(alpha), c_max_(c_max), eps1_(eps1), eps2_(eps2), c_loss_(c_loss) {
  if (c_max < 1) throw std::invalid_argument("SvtGate: c_max must be >= 1");
  if (!(eps1 > 0.0 && eps2 > 0.0)) {
    throw std::invalid_argument("SvtGate: epsilons must be > 0");
  }
  if (!(c_loss > 0.0)) throw std::invalid_argument("SvtGate: c_loss must be > 0");
  if (std::isnan(alpha)) throw std::invalid_argument("SvtGate: alpha is NaN");
  noisy_threshold_ = alpha_ + threshold_rng.Laplace(threshold_noise_scale());
}

double SvtGate::threshold_noise_scale() const {
  return 2.0 * c_max_ * c_loss_ / eps1_;
}

double SvtGate::query_noise_scale() const {
  return 4.0 * c_max_ * c_loss_ / eps2_;
}

SvtDecision SvtGate::Check(double quality, RngStream& query_rng) {
  if (exhausted()) return SvtDecision::kExhausted;
  const double noisy = quality + query_rng.Laplace(query_noise_scale());
  if (noisy >= noisy_threshold_) {
    ++count_;
    return SvtDecision::kAbove;
  }
  return SvtDecision::kBelow;
}

}  // namespace padmm
