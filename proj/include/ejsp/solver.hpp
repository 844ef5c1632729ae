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

// Baseline dispatching heuristics and a makespan hill climber. They exist
// to smoke-test instances and the evaluator, not to compete.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ejsp/core.hpp"
#include "ejsp/eval.hpp"

namespace ejsp {

enum class DispatchRule { fifo, spt, edd };
enum class SpeedPolicy { slowest, reference, fastest };

struct SolverConfig {
  DispatchRule rule = DispatchRule::fifo;
  SpeedPolicy speed_policy = SpeedPolicy::reference;
  std::int64_t improvement_budget = 0;
};

inline std::optional<DispatchRule> parse_rule(std::string_view s) {
  if (s == "fifo") return DispatchRule::fifo;
  if (s == "spt") return DispatchRule::spt;
  if (s == "edd") return DispatchRule::edd;
  return std::nullopt;
}

inline std::optional<SpeedPolicy> parse_speed_policy(std::string_view s) {
  if (s == "slowest") return SpeedPolicy::slowest;
  if (s == "reference") return SpeedPolicy::reference;
  if (s == "fastest") return SpeedPolicy::fastest;
  return std::nullopt;
}

inline std::int64_t policy_speed(const SpeedGrid& grid, SpeedPolicy policy) {
  const auto last = static_cast<std::int64_t>(grid.size()) - 1;
  switch (policy) {
    case SpeedPolicy::slowest: return 0;
    case SpeedPolicy::fastest: return last;
    case SpeedPolicy::reference: {
      std::int64_t best = 0;
      for (std::int64_t s = 1; s <= last; ++s)
        if (std::abs(grid[static_cast<std::size_t>(s)] - 1.0) < std::abs(grid[static_cast<std::size_t>(best)] - 1.0))
          best = s;
      return best;
    }
  }
  return 0;
}

/// Non-delay list scheduling. At each step the earliest possible start t*
/// over all jobs' next tasks is found; among tasks able to start at t* the
/// rule key picks one, ties to the lowest job id.
inline Schedule dispatch(const Instance& inst, const SolverConfig& config) {
  const auto speed = policy_speed(inst.speed_multipliers, config.speed_policy);
  const auto sp = static_cast<std::size_t>(speed);
  constexpr Time kNoDue = std::numeric_limits<Time>::max();

  Schedule sched;
  sched.entries.resize(inst.jobs.size());
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) sched.entries[j].resize(inst.jobs[j].size());

  std::vector<std::size_t> next(inst.jobs.size(), 0);
  std::vector<Time> job_free(inst.jobs.size(), 0);
  std::vector<Time> machine_free(static_cast<std::size_t>(inst.machines), 0);

  auto key = [&](std::size_t j) -> Time {
    const auto& t = inst.task(j, next[j]);
    switch (config.rule) {
      case DispatchRule::fifo: return t.release;
      case DispatchRule::spt: return t.times[sp];
      case DispatchRule::edd: return t.due.value_or(kNoDue);
    }
    return 0;
  };

  for (std::size_t remaining = inst.task_count(); remaining > 0; --remaining) {
    Time best_start = std::numeric_limits<Time>::max();
    std::vector<std::pair<std::size_t, Time>> candidates;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
      if (next[j] == inst.jobs[j].size()) continue;
      const auto& t = inst.task(j, next[j]);
      const Time est = std::max({t.release, job_free[j], machine_free[static_cast<std::size_t>(t.machine)]});
      candidates.emplace_back(j, est);
      best_start = std::min(best_start, est);
    }
    std::size_t pick = inst.jobs.size();
    for (auto [j, est] : candidates) {
      if (est != best_start) continue;
      if (pick == inst.jobs.size() || key(j) < key(pick)) pick = j;
    }
    const auto& t = inst.task(pick, next[pick]);
    auto& a = sched.at(pick, next[pick]);
    a.start = best_start;
    a.speed = speed;
    const Time end = best_start + t.times[sp];
    job_free[pick] = end;
    machine_free[static_cast<std::size_t>(t.machine)] = end;
    ++next[pick];
  }
  return sched;
}

namespace detail {
inline Time makespan_of(const Instance& inst, const Schedule& s) {
  Time ms = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t p = 0; p < inst.jobs[j].size(); ++p) ms = std::max(ms, completion(inst, s, j, p));
  return ms;
}
}  // namespace detail

/// First-improvement hill climb on makespan. The neighbourhood is scanned
/// in a fixed order: adjacent swaps on each machine (machine-ascending,
/// position-ascending), then single-task speed changes (job, position,
/// speed ascending). Every candidate is re-timed semi-actively and accepted
/// only on a strict makespan decrease. `budget` caps accepted moves.
inline Schedule improve(const Instance& inst, const Schedule& input, std::int64_t budget) {
  if (auto errs = validate_schedule(inst, input); !errs.empty()) throw ValidationError(std::move(errs));
  Schedule current = input;
  Time current_ms = detail::makespan_of(inst, current);
  auto seqs = machine_sequences(inst, current);
  std::vector<std::vector<std::int64_t>> speeds(inst.jobs.size());
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (const auto& a : current.entries[j]) speeds[j].push_back(a.speed);

  auto try_accept = [&]() {
    auto timed = semi_active(inst, seqs, speeds);
    if (!timed) return false;
    const Time ms = detail::makespan_of(inst, *timed);
    if (ms >= current_ms) return false;
    current = std::move(*timed);
    current_ms = ms;
    return true;
  };

  const auto speed_count = static_cast<std::int64_t>(inst.speed_count());
  for (std::int64_t iter = 0; iter < budget; ++iter) {
    bool moved = false;
    for (std::size_t m = 0; m < seqs.size() && !moved; ++m)
      for (std::size_t i = 0; i + 1 < seqs[m].size() && !moved; ++i) {
        std::swap(seqs[m][i], seqs[m][i + 1]);
        moved = try_accept();
        if (!moved) std::swap(seqs[m][i], seqs[m][i + 1]);
      }
    for (std::size_t j = 0; j < speeds.size() && !moved; ++j)
      for (std::size_t p = 0; p < speeds[j].size() && !moved; ++p) {
        const auto original = speeds[j][p];
        for (std::int64_t s = 0; s < speed_count && !moved; ++s) {
          if (s == original) continue;
          speeds[j][p] = s;
          moved = try_accept();
        }
        if (!moved) speeds[j][p] = original;
      }
    if (!moved) break;
  }
  return current;
}

inline Schedule solve(const Instance& inst, const SolverConfig& config) {
  auto s = dispatch(inst, config);
  return config.improvement_budget > 0 ? improve(inst, s, config.improvement_budget) : s;
}

}  // namespace ejsp
