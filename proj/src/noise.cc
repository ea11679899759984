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

#include "padmm/noise.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace padmm {

std::uint64_t StreamId(int agent, NoisePurpose purpose) {
  if (agent < 0) throw std::invalid_argument("StreamId: negative agent");
  return static_cast<std::uint64_t>(agent) * 4 +
         static_cast<std::uint64_t>(purpose);
}

double LaplaceFromUniform(double u, double b) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("LaplaceFromUniform: u must be in (0, 1)");
  }
  if (!(b > 0.0)) throw std::invalid_argument("Laplace scale must be > 0");
  const double centered = u - 0.5;
  if (centered == 0.0) return 0.0;
  const double magnitude = -b * std::log1p(-2.0 * std::abs(centered));
  return centered < 0.0 ? -magnitude : magnitude;
}

namespace {

std::mt19937_64 SeedEngine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed),
      static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream_id),
      static_cast<std::uint32_t>(stream_id >> 32),
  };
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id,
                     NoiseMode mode)
    : seed_(seed),
      stream_id_(stream_id),
      mode_(mode),
      engine_(SeedEngine(seed, stream_id)) {}

Vector RngStream::Gaussian(double sigma, int d) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("Gaussian: sigma must be finite and >= 0");
  }
  if (d < 1) throw std::invalid_argument("Gaussian: d must be >= 1");
  Vector out = Vector::Zero(d);
  if (mode_ == NoiseMode::kDisabled || sigma == 0.0) return out;
  for (int k = 0; k < d; ++k) out[k] = sigma * normal_(engine_);
  return out;
}

double RngStream::Laplace(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("Laplace scale must be > 0");
  if (mode_ == NoiseMode::kDisabled) return 0.0;
  return LaplaceFromUniform(Uniform(), b);
}

double RngStream::Uniform() {
  // 53 random mantissa bits; zero is rejected so the result is in (0, 1).
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

std::uint64_t RngStream::UniformIndex(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("UniformIndex: n must be > 0");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r < limit) return r % n;
  }
}

double RngStream::StandardNormal() { return normal_(engine_); }

}  // namespace padmm
