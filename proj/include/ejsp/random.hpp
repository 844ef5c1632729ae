// Copyright 2026 The ejsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic random streams and the three release-date distributions.
//
// Streams are SplitMix64 generators (Steele, Lea, Flood 2014). The stream
// for instance q of a suite with base seed s starts at
//
//   state = mix64(s ^ (q * kStreamSalt))
//
// so instance q never depends on how many instances the suite holds.
// Every sampler consumes a fixed number of draws: one for uniform and
// exponential, two for gaussian.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string_view>

#include "ejsp/core.hpp"

namespace ejsp {

inline constexpr std::string_view kPrngId = "splitmix64";
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
/// Odd multiplier separating per-instance streams.
inline constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  explicit constexpr Stream(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Top 53 bits scaled to [0, 1).
  constexpr double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t state() const { return state_; }
  static constexpr std::string_view prng_id() { return kPrngId; }

 private:
  std::uint64_t state_;
};

constexpr Stream make_stream(std::uint64_t seed, std::uint64_t index) {
  return Stream(mix64(seed ^ (index * kStreamSalt)));
}

inline double exponential_from_unit(double u, double lambda) {
  return -std::log1p(-u) / lambda;
}

inline double uniform_from_unit(double u, double a, double b) {
  return a + u * (b - a);
}

/// Box-Muller, cosine branch only.
inline double gaussian_from_units(double u1, double u2, double mu, double sigma) {
  if (u1 <= 0.0) u1 = 0x1.0p-53;  // next_unit can return exactly 0
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mu + sigma * z;
}

inline double sample(Stream& stream, const DistSpec& dist) {
  if (!dist.resolved()) throw std::invalid_argument("sample: distribution parameters unresolved");
  switch (dist.kind) {
    case DistKind::exponential:
      return exponential_from_unit(stream.next_unit(), *dist.lambda);
    case DistKind::uniform:
      return uniform_from_unit(stream.next_unit(), *dist.a, *dist.b);
    case DistKind::gaussian: {
      const double u1 = stream.next_unit();
      const double u2 = stream.next_unit();
      return gaussian_from_units(u1, u2, *dist.mu, *dist.sigma);
    }
  }
  throw std::invalid_argument("sample: unknown distribution");
}

inline std::int64_t sample_int_range(Stream& stream, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("sample_int_range: lo > hi");
  const double span = static_cast<double>(hi - lo) + 1.0;
  const auto v = lo + static_cast<std::int64_t>(std::floor(stream.next_unit() * span));
  return v > hi ? hi : v;
}

}  // namespace ejsp
