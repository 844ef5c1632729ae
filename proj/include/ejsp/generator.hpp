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

// Instance configurator.
//
// For instance q the generator draws, from make_stream(seed, q) and in this
// order: the job routes, the base times (job-major), then one release date
// per job (job-ascending). Processing times and energies follow from the
// base times through scale_task and consume no randomness. The draw order
// is part of the reproducibility contract; do not reorder.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ejsp/core.hpp"
#include "ejsp/decimal.hpp"
#include "ejsp/parallel.hpp"
#include "ejsp/random.hpp"
#include "ejsp/speed.hpp"

namespace ejsp {

inline std::vector<std::vector<std::int64_t>> generate_job_routes(Stream& stream, std::int64_t jobs,
                                                                  std::int64_t machines,
                                                                  std::int64_t tasks) {
  if (tasks > machines) throw std::invalid_argument("generate_job_routes: tasks exceed machines");
  if (jobs < 0 || tasks < 0) throw std::invalid_argument("generate_job_routes: negative count");
  std::vector<std::vector<std::int64_t>> routes;
  routes.reserve(static_cast<std::size_t>(jobs));
  std::vector<std::int64_t> perm(static_cast<std::size_t>(machines));
  for (std::int64_t j = 0; j < jobs; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::int64_t i = 0; i < tasks; ++i) {
      const auto k = sample_int_range(stream, i, machines - 1);
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(k)]);
    }
    routes.emplace_back(perm.begin(), perm.begin() + tasks);
  }
  return routes;
}

inline std::vector<std::vector<Time>> generate_base_times(Stream& stream, std::int64_t jobs,
                                                          std::int64_t tasks,
                                                          std::pair<Time, Time> range) {
  if (range.first < 1 || range.first > range.second)
    throw std::invalid_argument("generate_base_times: invalid range");
  std::vector<std::vector<Time>> base(static_cast<std::size_t>(jobs),
                                      std::vector<Time>(static_cast<std::size_t>(tasks)));
  for (auto& row : base)
    for (auto& v : row) v = sample_int_range(stream, range.first, range.second);
  return base;
}

/// H = ceil(total base time / machines).
inline Time horizon(const std::vector<std::vector<TaskSpec>>& jobs, std::int64_t machines) {
  Time total = 0;
  for (const auto& job : jobs)
    for (const auto& t : job) total += t.base_time;
  return (total + machines - 1) / machines;
}

/// Fills absent parameters from the horizon and rounds every parameter to
/// six decimals so the recorded metadata regenerates identical samples.
inline DistSpec resolve_dist(const DistSpec& dist, Time horizon_length) {
  const double h = static_cast<double>(horizon_length);
  DistSpec r = dist;
  switch (r.kind) {
    case DistKind::uniform:
      if (!r.a) r.a = 0.0;
      if (!r.b) r.b = h / 2.0;
      r.a = quantize6(*r.a);
      r.b = quantize6(*r.b);
      break;
    case DistKind::exponential:
      if (!r.lambda) r.lambda = 4.0 / h;
      r.lambda = quantize6(*r.lambda);
      break;
    case DistKind::gaussian:
      if (!r.mu) r.mu = h / 4.0;
      if (!r.sigma) r.sigma = h / 12.0;
      r.mu = quantize6(*r.mu);
      r.sigma = quantize6(*r.sigma);
      break;
  }
  if (auto errs = validate_dist(r); !errs.empty())
    throw std::invalid_argument("resolve_dist: " + errs.front());
  return r;
}

struct JobDates {
  Time release = 0;
  DueDate due;

  friend bool operator==(const JobDates&, const JobDates&) = default;
};

/// Twice the median, so even-length medians stay integral.
inline Time twice_median(std::vector<Time> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 == 1 ? 2 * values[n / 2] : values[n / 2 - 1] + values[n / 2];
}

/// Job window = max(ceil(k * median * T), work at the fastest speed), with
/// k = 2 (loose) or 1.2 (tight). Integer arithmetic only.
inline Time due_window(const std::vector<TaskSpec>& job, RrddMode rrdd) {
  std::vector<Time> base;
  Time fastest = 0;
  for (const auto& t : job) {
    base.push_back(t.base_time);
    fastest += t.times.back();
  }
  const Time num = rrdd == RrddMode::tight ? 6 : 2;
  const Time den = rrdd == RrddMode::tight ? 5 : 1;
  const Time scaled = num * twice_median(base) * static_cast<Time>(job.size());
  const Time slack = (scaled + 2 * den - 1) / (2 * den);
  return std::max(slack, fastest);
}

inline std::vector<JobDates> generate_release_due(Stream& stream,
                                                  const std::vector<std::vector<TaskSpec>>& jobs,
                                                  std::int64_t machines, const DistSpec& dist,
                                                  RrddMode rrdd) {
  std::vector<JobDates> out(jobs.size());
  if (rrdd == RrddMode::none) return out;
  const Time h = horizon(jobs, machines);
  const DistSpec resolved = dist.resolved() ? dist : resolve_dist(dist, h);
  const double upper = static_cast<double>(h) / 2.0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const double r = std::clamp(sample(stream, resolved), 0.0, upper);
    out[j].release = round_half_up(r);
    out[j].due = out[j].release + due_window(jobs[j], rrdd);
  }
  return out;
}

inline Instance generate_instance(const InstanceParams& params, std::int64_t q) {
  if (auto errs = validate_params(params); !errs.empty()) throw ValidationError(std::move(errs));
  if (q < 0 || q >= params.count) throw std::invalid_argument("generate_instance: index out of range");

  Stream stream = make_stream(params.seed, static_cast<std::uint64_t>(q));
  const auto routes = generate_job_routes(stream, params.jobs, params.machines, params.tasks_per_job);
  const auto base = generate_base_times(stream, params.jobs, params.tasks_per_job, params.base_time_range);

  Instance inst;
  inst.machines = params.machines;
  inst.speed_multipliers = speed_grid(params.speeds);
  for (auto& x : inst.speed_multipliers.multipliers) x = quantize6(x);

  inst.jobs.resize(static_cast<std::size_t>(params.jobs));
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    auto& job = inst.jobs[j];
    job.reserve(routes[j].size());
    for (std::size_t p = 0; p < routes[j].size(); ++p) {
      auto scaled = scale_task(base[j][p], inst.speed_multipliers);
      TaskSpec t;
      t.job = static_cast<std::int64_t>(j);
      t.position = static_cast<std::int64_t>(p);
      t.machine = routes[j][p];
      t.base_time = base[j][p];
      t.times = std::move(scaled.times);
      t.energies = std::move(scaled.energies);
      job.push_back(std::move(t));
    }
  }

  const DistSpec resolved = resolve_dist(params.dist, horizon(inst.jobs, inst.machines));
  const auto dates = generate_release_due(stream, inst.jobs, inst.machines, resolved, params.rrdd);
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (auto& t : inst.jobs[j]) {
      t.release = dates[j].release;
      t.due = dates[j].due;
    }

  auto& meta = inst.metadata;
  meta.seed = params.seed;
  meta.index = q;
  meta.dist = resolved;
  meta.rrdd = params.rrdd;
  meta.base_time_range = params.base_time_range;
  meta.source_speeds = params.speeds;
  meta.generator_version = std::string(kGeneratorVersion);
  meta.prng_id = std::string(kPrngId);
  return inst;
}

/// Element q equals generate_instance(params, q) for any thread count.
inline std::vector<Instance> generate_suite(const InstanceParams& params, unsigned threads = 1) {
  if (auto errs = validate_params(params); !errs.empty()) throw ValidationError(std::move(errs));
  std::vector<Instance> suite(static_cast<std::size_t>(params.count));
  parallel_for(suite.size(), threads, [&](std::size_t q) {
    suite[q] = generate_instance(params, static_cast<std::int64_t>(q));
  });
  return suite;
}

/// Builds an instance from hand-written routes: fills job/position
/// indices and the metadata fields the model requires.
inline Instance assemble_instance(std::int64_t machines, SpeedGrid grid,
                                  std::vector<std::vector<TaskSpec>> jobs) {
  Instance inst;
  inst.machines = machines;
  inst.metadata.source_speeds = static_cast<std::int64_t>(grid.size());
  inst.metadata.prng_id = std::string(kPrngId);
  inst.speed_multipliers = std::move(grid);
  inst.jobs = std::move(jobs);
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t p = 0; p < inst.jobs[j].size(); ++p) {
      inst.jobs[j][p].job = static_cast<std::int64_t>(j);
      inst.jobs[j][p].position = static_cast<std::int64_t>(p);
    }
  return inst;
}

/// Parameters that regenerate an instance from its recorded metadata.
inline InstanceParams params_from_metadata(const Instance& inst) {
  const auto& m = inst.metadata;
  InstanceParams p;
  p.count = m.index + 1;
  p.jobs = static_cast<std::int64_t>(inst.job_count());
  p.machines = inst.machines;
  p.tasks_per_job = static_cast<std::int64_t>(inst.tasks_per_job());
  p.speeds = m.source_speeds;
  p.dist = m.dist;
  p.rrdd = m.rrdd;
  p.seed = m.seed;
  p.base_time_range = m.base_time_range;
  return p;
}

}  // namespace ejsp
