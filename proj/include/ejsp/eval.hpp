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

// Instance and schedule validation, objective evaluation, and an exhaustive
// oracle for tiny instances. All timing is integer arithmetic.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ejsp/core.hpp"
#include "ejsp/decimal.hpp"
#include "ejsp/generator.hpp"
#include "ejsp/speed.hpp"

namespace ejsp {

namespace detail {

inline std::string where(std::size_t j, std::size_t p) {
  return "job " + std::to_string(j) + " task " + std::to_string(p) + ": ";
}

inline void check_grid(const Instance& inst, std::vector<std::string>& out) {
  const auto& x = inst.speed_multipliers.multipliers;
  const auto& meta = inst.metadata;
  if (x.empty()) {
    out.emplace_back("speed grid is empty");
    return;
  }
  for (std::size_t s = 1; s < x.size(); ++s)
    if (!(x[s] > x[s - 1])) out.emplace_back("speed grid not strictly increasing at index " + std::to_string(s));
  for (double v : x)
    if (!(v > 0.0)) out.emplace_back("speed multiplier must be positive");

  if (!meta.projection.empty()) {
    // Projected grids keep any increasing subset of the generated one.
    for (double v : x)
      if (v < kGridLo - 1e-9 || v > kGridHi + 1e-9)
        out.emplace_back("speed multiplier " + format_fixed(v) + " outside [0.5, 3]");
    return;
  }
  if (x.size() == 1) {
    if (std::abs(x[0] - 1.0) > 1e-9) out.emplace_back("single-speed grid must be {1.0}");
    return;
  }
  if (std::abs(x.front() - kGridLo) > 1e-9 || std::abs(x.back() - kGridHi) > 1e-9)
    out.emplace_back("speed grid must span [0.5, 3]");
  const double step = (kGridHi - kGridLo) / static_cast<double>(x.size() - 1);
  for (std::size_t s = 1; s < x.size(); ++s)
    if (std::abs((x[s] - x[s - 1]) - step) > 2e-6) {
      out.emplace_back("speed grid spacing not uniform");
      break;
    }
}

inline void check_metadata(const Instance& inst, std::vector<std::string>& out) {
  const auto& m = inst.metadata;
  if (m.prng_id.empty()) out.emplace_back("metadata prng id is empty");
  if (m.rounding != kRounding) out.push_back("metadata rounding '" + m.rounding + "' is not supported");
  if (m.index < 0) out.emplace_back("metadata instance index is negative");
  if (m.source_speeds < 1) out.emplace_back("metadata source speed count must be >= 1");
  if (m.projection.empty()) {
    if (static_cast<std::int64_t>(inst.speed_count()) != m.source_speeds)
      out.emplace_back("speed count differs from metadata source speeds without a projection");
  } else {
    if (m.projection.size() != inst.speed_count())
      out.emplace_back("metadata projection length differs from speed count");
    for (std::size_t i = 0; i < m.projection.size(); ++i)
      if (m.projection[i] < 0 || m.projection[i] >= m.source_speeds ||
          (i > 0 && m.projection[i] <= m.projection[i - 1])) {
        out.emplace_back("metadata projection is not an increasing subset of the source speeds");
        break;
      }
  }
  for (auto& e : validate_dist(m.dist)) out.push_back("metadata dist: " + e);
}

}  // namespace detail

/// One entry per violated model invariant; empty means valid.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.machines < 1) out.emplace_back("machine count must be >= 1");
  if (inst.jobs.empty()) out.emplace_back("instance has no jobs");
  detail::check_grid(inst, out);
  detail::check_metadata(inst, out);

  const std::size_t speeds = inst.speed_count();
  const std::size_t route_len = inst.tasks_per_job();
  if (route_len == 0 && !inst.jobs.empty()) out.emplace_back("route length must be >= 1");
  if (static_cast<std::int64_t>(route_len) > inst.machines) out.emplace_back("route length exceeds machines");

  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    if (job.size() != route_len)
      out.push_back("job " + std::to_string(j) + ": route length " + std::to_string(job.size()) +
                    " differs from " + std::to_string(route_len));
    std::set<std::int64_t> seen;
    for (std::size_t p = 0; p < job.size(); ++p) {
      const auto& t = job[p];
      const auto at = detail::where(j, p);
      if (t.job != static_cast<std::int64_t>(j) || t.position != static_cast<std::int64_t>(p))
        out.push_back(at + "job/position fields do not match placement");
      if (t.machine < 0 || t.machine >= inst.machines)
        out.push_back(at + "machine index " + std::to_string(t.machine) + " out of range");
      if (!seen.insert(t.machine).second)
        out.push_back(at + "route duplicate machine " + std::to_string(t.machine));
      if (t.base_time < 1) out.push_back(at + "base time must be >= 1");
      if (t.times.size() != speeds || t.energies.size() != speeds) {
        out.push_back(at + "per-speed vector length differs from speed count");
        continue;
      }
      for (std::size_t s = 0; s < speeds; ++s) {
        if (t.times[s] < 1) out.push_back(at + "processing time must be >= 1");
        if (t.energies[s] < 1) out.push_back(at + "energy must be >= 1");
      }
      for (std::size_t s = 1; s < speeds; ++s) {
        if (t.times[s] > t.times[s - 1]) {
          out.push_back(at + "speed monotonicity: times increase with speed");
          break;
        }
      }
      for (std::size_t s = 1; s < speeds; ++s) {
        if (t.energies[s] < t.energies[s - 1]) {
          out.push_back(at + "energy monotonicity: energies decrease with speed");
          break;
        }
      }
      if (t.release < 0) out.push_back(at + "release must be >= 0");
      if (t.due && *t.due < t.release) out.push_back(at + "due date before release");
      if (p > 0 && (t.release != job[0].release || t.due != job[0].due))
        out.push_back(at + "dates differ within job");
    }
  }
  return out;
}

inline Time completion(const Instance& inst, const Schedule& sched, std::size_t j, std::size_t p) {
  const auto& a = sched.at(j, p);
  return a.start + inst.task(j, p).times[static_cast<std::size_t>(a.speed)];
}

/// One entry per feasibility violation; empty means feasible.
inline std::vector<std::string> validate_schedule(const Instance& inst, const Schedule& sched) {
  std::vector<std::string> out;
  if (sched.entries.size() != inst.jobs.size()) {
    out.emplace_back("missing entry: schedule has " + std::to_string(sched.entries.size()) +
                     " jobs, instance has " + std::to_string(inst.jobs.size()));
    return out;
  }
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    if (sched.entries[j].size() != inst.jobs[j].size())
      out.push_back("missing entry: job " + std::to_string(j) + " entry count differs from route length");
  if (!out.empty()) return out;

  const auto speeds = static_cast<std::int64_t>(inst.speed_count());
  bool speeds_ok = true;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t p = 0; p < inst.jobs[j].size(); ++p) {
      const auto& a = sched.at(j, p);
      if (a.speed < 0 || a.speed >= speeds) {
        out.push_back(detail::where(j, p) + "speed out of range");
        speeds_ok = false;
      }
      if (a.start < 0) out.push_back(detail::where(j, p) + "negative start");
      if (a.start < inst.task(j, p).release) out.push_back(detail::where(j, p) + "release violated");
    }
  if (!speeds_ok) return out;

  std::vector<std::vector<std::pair<Time, Time>>> on_machine(static_cast<std::size_t>(inst.machines));
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t p = 0; p < inst.jobs[j].size(); ++p) {
      if (p > 0 && sched.at(j, p).start < completion(inst, sched, j, p - 1))
        out.push_back(detail::where(j, p) + "job order violated");
      const auto m = static_cast<std::size_t>(inst.task(j, p).machine);
      on_machine[m].emplace_back(sched.at(j, p).start, completion(inst, sched, j, p));
    }
  for (std::size_t m = 0; m < on_machine.size(); ++m) {
    auto& iv = on_machine[m];
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i)
      if (iv[i].first < iv[i - 1].second)
        out.push_back("machine overlap on machine " + std::to_string(m) + " at time " +
                      std::to_string(iv[i].first));
  }
  return out;
}

inline ObjectiveReport objectives(const Instance& inst, const Schedule& sched) {
  if (auto errs = validate_schedule(inst, sched); !errs.empty()) throw ValidationError(std::move(errs));
  ObjectiveReport r;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    for (std::size_t p = 0; p < inst.jobs[j].size(); ++p) {
      r.makespan = std::max(r.makespan, completion(inst, sched, j, p));
      r.total_energy += inst.task(j, p).energies[static_cast<std::size_t>(sched.at(j, p).speed)];
    }
    if (inst.jobs[j].empty()) continue;
    const auto& last = inst.jobs[j].back();
    if (last.due) r.total_tardiness += std::max<Time>(0, completion(inst, sched, j, inst.jobs[j].size() - 1) - *last.due);
  }
  return r;
}

enum class Objective { makespan, energy, tardiness };

inline Time objective_value(const ObjectiveReport& r, Objective which) {
  switch (which) {
    case Objective::makespan: return r.makespan;
    case Objective::energy: return r.total_energy;
    case Objective::tardiness: return r.total_tardiness;
  }
  return r.makespan;
}

struct TaskRef {
  std::size_t job = 0;
  std::size_t pos = 0;

  friend bool operator==(const TaskRef&, const TaskRef&) = default;
};

/// Machine sequences of a feasible schedule, tasks ordered by start time.
inline std::vector<std::vector<TaskRef>> machine_sequences(const Instance& inst, const Schedule& sched) {
  std::vector<std::vector<TaskRef>> seqs(static_cast<std::size_t>(inst.machines));
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t p = 0; p < inst.jobs[j].size(); ++p)
      seqs[static_cast<std::size_t>(inst.task(j, p).machine)].push_back({j, p});
  for (auto& seq : seqs)
    std::stable_sort(seq.begin(), seq.end(), [&](TaskRef a, TaskRef b) {
      return sched.at(a.job, a.pos).start < sched.at(b.job, b.pos).start;
    });
  return seqs;
}

/// Semi-active timing for fixed machine sequences and speeds: each task
/// starts at max(release, job predecessor end, machine predecessor end).
/// Returns nullopt when the sequences contradict the job routes (cycle).
inline std::optional<Schedule> semi_active(const Instance& inst,
                                           const std::vector<std::vector<TaskRef>>& seqs,
                                           const std::vector<std::vector<std::int64_t>>& speeds) {
  Schedule sched;
  sched.entries.resize(inst.jobs.size());
  std::vector<std::vector<int>> indeg(inst.jobs.size());
  std::vector<std::vector<TaskRef>> machine_next(inst.jobs.size());
  std::vector<std::vector<Time>> ready(inst.jobs.size());
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto n = inst.jobs[j].size();
    sched.entries[j].resize(n);
    indeg[j].assign(n, 0);
    machine_next[j].assign(n, TaskRef{std::numeric_limits<std::size_t>::max(), 0});
    ready[j].assign(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
      sched.entries[j][p].speed = speeds[j][p];
      ready[j][p] = inst.task(j, p).release;
      if (p > 0) ++indeg[j][p];
    }
  }
  for (const auto& seq : seqs)
    for (std::size_t i = 1; i < seq.size(); ++i) {
      ++indeg[seq[i].job][seq[i].pos];
      machine_next[seq[i - 1].job][seq[i - 1].pos] = seq[i];
    }

  std::vector<TaskRef> stack;
  for (std::size_t j = inst.jobs.size(); j-- > 0;)
    if (!inst.jobs[j].empty() && indeg[j][0] == 0) stack.push_back({j, 0});
  std::size_t done = 0;
  auto release_edge = [&](TaskRef to, Time at) {
    ready[to.job][to.pos] = std::max(ready[to.job][to.pos], at);
    if (--indeg[to.job][to.pos] == 0) stack.push_back(to);
  };
  while (!stack.empty()) {
    const TaskRef t = stack.back();
    stack.pop_back();
    ++done;
    auto& a = sched.entries[t.job][t.pos];
    a.start = ready[t.job][t.pos];
    const Time end = a.start + inst.task(t.job, t.pos).times[static_cast<std::size_t>(a.speed)];
    if (t.pos + 1 < inst.jobs[t.job].size()) release_edge({t.job, t.pos + 1}, end);
    if (const auto nx = machine_next[t.job][t.pos]; nx.job != std::numeric_limits<std::size_t>::max())
      release_edge(nx, end);
  }
  if (done != inst.task_count()) return std::nullopt;
  return sched;
}

struct OracleResult {
  Schedule schedule;
  Time value = 0;
};

inline constexpr std::size_t kOracleMaxTasks = 6;
inline constexpr std::size_t kOracleMaxSpeeds = 2;

/// Exhaustive optimum over all job interleavings (hence all machine
/// sequencings) and all speed assignments, each timed semi-actively. Ties
/// go to the lexicographically smallest (start, speed) encoding in
/// job/position order.
inline OracleResult brute_force_best(const Instance& inst, Objective which) {
  const std::size_t n = inst.task_count();
  const std::size_t speeds = inst.speed_count();
  if (n > kOracleMaxTasks || speeds > kOracleMaxSpeeds)
    throw std::invalid_argument("brute_force_best: instance exceeds enumeration guard (" + std::to_string(n) +
                                " tasks, " + std::to_string(speeds) + " speeds)");

  std::vector<TaskRef> flat;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t p = 0; p < inst.jobs[j].size(); ++p) flat.push_back({j, p});

  std::optional<OracleResult> best;
  std::vector<std::vector<Assignment>> best_enc;
  Schedule cand;
  cand.entries.resize(inst.jobs.size());
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) cand.entries[j].resize(inst.jobs[j].size());

  std::vector<std::size_t> next_pos(inst.jobs.size(), 0);
  std::vector<Time> job_free(inst.jobs.size(), 0);
  std::vector<Time> machine_free(static_cast<std::size_t>(inst.machines), 0);

  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= speeds;

  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t c = code;
    for (const auto& t : flat) {
      cand.entries[t.job][t.pos].speed = static_cast<std::int64_t>(c % speeds);
      c /= speeds;
    }
    // Depth-first over interleavings; timing follows the interleaving order,
    // which is a topological order of the implied disjunctive graph.
    auto recurse = [&](auto&& self, std::size_t placed) -> void {
      if (placed == n) {
        const Time value = objective_value(objectives(inst, cand), which);
        if (!best || value < best->value || (value == best->value && cand.entries < best_enc)) {
          best = OracleResult{cand, value};
          best_enc = cand.entries;
        }
        return;
      }
      for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const std::size_t p = next_pos[j];
        if (p == inst.jobs[j].size()) continue;
        const auto& task = inst.task(j, p);
        const auto m = static_cast<std::size_t>(task.machine);
        auto& a = cand.entries[j][p];
        const Time saved_job = job_free[j];
        const Time saved_machine = machine_free[m];
        a.start = std::max({task.release, job_free[j], machine_free[m]});
        const Time end = a.start + task.times[static_cast<std::size_t>(a.speed)];
        job_free[j] = end;
        machine_free[m] = end;
        ++next_pos[j];
        self(self, placed + 1);
        --next_pos[j];
        job_free[j] = saved_job;
        machine_free[m] = saved_machine;
      }
    };
    recurse(recurse, 0);
  }
  if (!best) throw std::invalid_argument("brute_force_best: instance has no tasks");
  return *best;
}

struct InstanceStats {
  std::string label;
  std::int64_t jobs = 0;
  std::int64_t machines = 0;
  std::int64_t tasks = 0;
  std::int64_t speeds = 0;
  DistKind dist = DistKind::uniform;
  RrddMode rrdd = RrddMode::none;
  double median_base = 0.0;
  Time total_work = 0;
};

struct SuiteSummary {
  std::vector<InstanceStats> rows;
  // Component-wise extremes over rows; meaningful only when rows is non-empty.
  InstanceStats min;
  InstanceStats max;
  std::set<DistKind> dists;
  std::set<RrddMode> rrdds;
};

inline InstanceStats instance_stats(const Instance& inst, std::string label = {}) {
  InstanceStats s;
  s.label = std::move(label);
  s.jobs = static_cast<std::int64_t>(inst.job_count());
  s.machines = inst.machines;
  s.tasks = static_cast<std::int64_t>(inst.tasks_per_job());
  s.speeds = static_cast<std::int64_t>(inst.speed_count());
  s.dist = inst.metadata.dist.kind;
  s.rrdd = inst.metadata.rrdd;
  std::vector<Time> base;
  for (const auto& job : inst.jobs)
    for (const auto& t : job) {
      base.push_back(t.base_time);
      s.total_work += t.base_time;
    }
  s.median_base = static_cast<double>(twice_median(std::move(base))) / 2.0;
  return s;
}

inline SuiteSummary suite_stats(const std::vector<Instance>& instances,
                                 const std::vector<std::string>& labels = {}) {
  SuiteSummary sum;
  for (std::size_t i = 0; i < instances.size(); ++i)
    sum.rows.push_back(instance_stats(instances[i], i < labels.size() ? labels[i] : std::to_string(i)));
  if (sum.rows.empty()) return sum;
  sum.min = sum.max = sum.rows.front();
  sum.min.label = "min";
  sum.max.label = "max";
  for (const auto& r : sum.rows) {
    auto fold = [](auto& lo, auto& hi, auto v) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    };
    fold(sum.min.jobs, sum.max.jobs, r.jobs);
    fold(sum.min.machines, sum.max.machines, r.machines);
    fold(sum.min.tasks, sum.max.tasks, r.tasks);
    fold(sum.min.speeds, sum.max.speeds, r.speeds);
    fold(sum.min.median_base, sum.max.median_base, r.median_base);
    fold(sum.min.total_work, sum.max.total_work, r.total_work);
    sum.dists.insert(r.dist);
    sum.rrdds.insert(r.rrdd);
  }
  return sum;
}

/// CSV with one row per instance followed by "min" and "max" rows; the
/// summary rows list the distinct distributions and rrdd modes joined by '|'.
inline std::string stats_csv(const SuiteSummary& sum) {
  std::string out = "instance,jobs,machines,tasks,speeds,dist,rrdd,median_base,total_work\n";
  auto row = [&](const InstanceStats& r, std::string dist, std::string rrdd) {
    out += r.label + ',' + std::to_string(r.jobs) + ',' + std::to_string(r.machines) + ',' +
           std::to_string(r.tasks) + ',' + std::to_string(r.speeds) + ',' + dist + ',' + rrdd + ',' +
           format_fixed(r.median_base, 1) + ',' + std::to_string(r.total_work) + '\n';
  };
  for (const auto& r : sum.rows) row(r, std::string(to_string(r.dist)), std::string(to_string(r.rrdd)));
  if (sum.rows.empty()) return out;
  std::string dists, rrdds;
  for (auto d : sum.dists) dists += (dists.empty() ? "" : "|") + std::string(to_string(d));
  for (auto m : sum.rrdds) rrdds += (rrdds.empty() ? "" : "|") + std::string(to_string(m));
  row(sum.min, dists, rrdds);
  row(sum.max, dists, rrdds);
  return out;
}

}  // namespace ejsp
