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

#ifndef PADMM_NOISE_H_
#define PADMM_NOISE_H_

#include <cstdint>
#include <random>

#include "padmm/data.h"

namespace padmm {

// What a stream is used for. Each agent gets one stream per purpose.
enum class NoisePurpose : std::uint64_t {
  kObjective = 0,     // b_i1
  kOutput = 1,        // b_i2
  kSvtThreshold = 2,  // noisy SVT threshold
  kSvtQuery = 3,      // per-check SVT query noise
};

// kDisabled makes every sampler return zero (the Laplace median, the
// Gaussian mean). Test and debugging use only.
enum class NoiseMode { kEnabled, kDisabled };

std::uint64_t StreamId(int agent, NoisePurpose purpose);

// Inverse CDF of Lap(0, b) at u in (0, 1). u = 0.5 maps to 0.
double LaplaceFromUniform(double u, double b);

// A seeded pseudo-random stream. (seed, stream_id) pairs are expanded through
// std::seed_seq into a full Mersenne Twister state, so distinct ids give
// unrelated streams. Not thread-safe; one owner per stream.
//
// This is not a cryptographically secure sampler and does not defend against
// floating-point attacks on DP noise.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id,
            NoiseMode mode = NoiseMode::kEnabled);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  NoiseMode mode() const { return mode_; }

  // d iid N(0, sigma^2) draws. sigma = 0 (or disabled mode) gives zeros.
  // Throws std::invalid_argument if sigma < 0 or d < 1.
  Vector Gaussian(double sigma, int d);

  // One Lap(0, b) draw. Throws std::invalid_argument if b <= 0.
  double Laplace(double b);

  // Uniform in the open interval (0, 1). Ignores the noise mode.
  double Uniform();
  // Unbiased integer in [0, n). Ignores the noise mode.
  std::uint64_t UniformIndex(std::uint64_t n);
  // Standard normal. Ignores the noise mode.
  double StandardNormal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  NoiseMode mode_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace padmm

#endif  // PADMM_NOISE_H_
