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

// Calibration curves relating processing time, energy and machine speed.
//
//   energy_percentage(x) = floor(exp(-x / 100) * 100)
//   time_fraction(x)     = 4.0704 * log(2) / log(1 + (2.5093 x)^3)
//
// A speed grid splits [0.5, 3] into S-1 equal parts; each boundary x_s is an
// energy multiplier and time_fraction(x_s) is the matching share of the base
// processing time. time_fraction(1) is ~1, so x = 1 is the reference speed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ejsp/core.hpp"

namespace ejsp {

inline constexpr double kGridLo = 0.5;
inline constexpr double kGridHi = 3.0;
inline constexpr double kTimeScale = 4.0704;
inline constexpr double kSpeedGain = 2.5093;

inline int energy_percentage(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("energy_percentage: x must be >= 0");
  return static_cast<int>(std::floor(std::exp(-x / 100.0) * 100.0));
}

inline double time_fraction(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("time_fraction: x must be > 0");
  const double v = x * kSpeedGain;
  return kTimeScale * std::log(2.0) / std::log1p(v * v * v);
}

inline SpeedGrid speed_grid(std::int64_t speeds) {
  if (speeds < 1) throw std::invalid_argument("speed_grid: speed count must be >= 1");
  if (speeds == 1) return SpeedGrid{{1.0}};
  SpeedGrid grid;
  grid.multipliers.reserve(static_cast<std::size_t>(speeds));
  const double step = (kGridHi - kGridLo) / static_cast<double>(speeds - 1);
  for (std::int64_t s = 0; s < speeds; ++s)
    grid.multipliers.push_back(s + 1 == speeds ? kGridHi : kGridLo + static_cast<double>(s) * step);
  return grid;
}

/// Half-up rounding for non-negative values.
inline std::int64_t round_half_up(double v) {
  return static_cast<std::int64_t>(std::floor(v + 0.5));
}

struct ScaledTask {
  std::vector<Time> times;
  std::vector<Energy> energies;

  friend bool operator==(const ScaledTask&, const ScaledTask&) = default;
};

/// Energy at speed s is energy_percentage(base) * x_s and time is
/// base * time_fraction(x_s), both rounded half-up and clamped to >= 1.
inline ScaledTask scale_task(Time base_time, const SpeedGrid& grid) {
  if (base_time < 1) throw std::invalid_argument("scale_task: base time must be >= 1");
  if (grid.size() == 0) throw std::invalid_argument("scale_task: empty speed grid");
  const double energy = energy_percentage(static_cast<double>(base_time));
  ScaledTask out;
  out.times.reserve(grid.size());
  out.energies.reserve(grid.size());
  for (double x : grid.multipliers) {
    out.times.push_back(std::max<Time>(1, round_half_up(static_cast<double>(base_time) * time_fraction(x))));
    out.energies.push_back(std::max<Energy>(1, round_half_up(energy * x)));
  }
  return out;
}

}  // namespace ejsp
