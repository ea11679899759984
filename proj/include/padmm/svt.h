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

#ifndef PADMM_SVT_H_
#define PADMM_SVT_H_

#include <string>
#include <utility>

#include "padmm/noise.h"

namespace padmm {

enum class SvtDecision { kAbove, kBelow, kExhausted };

std::string ToString(SvtDecision d);

// Splits an SVT budget so that eps1 : eps2 = 1 : (2c)^(2/3).
// Throws std::invalid_argument unless c_max >= 1 and eps_total > 0.
std::pair<double, double> SvtSplitRatio(int c_max, double eps_total);

// Sparse vector gate with a threshold drawn once and at most c_max "above"
// answers. Query sensitivity is 2 * c_loss, so the threshold noise is
// Lap(2 c c_loss / eps1) and each query gets Lap(4 c c_loss / eps2).
class SvtGate {
 public:
  // Draws the noisy threshold from `threshold_rng`. Throws
  // std::invalid_argument on non-positive c_max, eps1, eps2 or c_loss.
  SvtGate(double alpha, int c_max, double eps1, double eps2, double c_loss,
          RngStream& threshold_rng);

  // Exhausted once c_max answers were Above; no noise is drawn then.
  // Otherwise draws one query noise and compares with >=.
  SvtDecision Check(double quality, RngStream& query_rng);

  double alpha() const { return alpha_; }
  double noisy_threshold() const { return noisy_threshold_; }
  int c_max() const { return c_max_; }
  int count() const { return count_; }
  bool exhausted() const { return count_ >= c_max_; }
  double eps1() const { return eps1_; }
  double eps2() const { return eps2_; }
  double c_loss() const { return c_loss_; }
  double threshold_noise_scale() const;
  double query_noise_scale() const;

 private:
  double alpha_;
  int c_max_;
  double eps1_;
  double eps2_;
  double c_loss_;
  double noisy_threshold_;
  int count_ = 0;
};

}  // namespace padmm

#endif  // PADMM_SVT_H_
