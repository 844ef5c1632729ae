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

// Shared domain types for energy-aware job shop instances.
//
// An instance is a set of jobs, each an ordered route of tasks over distinct
// machines. Every task carries one processing time and one energy value per
// machine speed, plus release and due dates. Dates are generated per job and
// replicated onto the job's tasks.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ejsp {

using Time = std::int64_t;
using Energy = std::int64_t;

/// Due date; std::nullopt is the unbounded sentinel ("inf" in files).
using DueDate = std::optional<Time>;

inline constexpr std::string_view kGeneratorVersion = "ejsp-1";
/// Rounding applied when scaling times and energies.
inline constexpr std::string_view kRounding = "half-up";

enum class DistKind { exponential, gaussian, uniform };
enum class RrddMode { none, loose, tight };

inline std::string_view to_string(DistKind kind) {
  switch (kind) {
    case DistKind::exponential: return "exponential";
    case DistKind::gaussian: return "gaussian";
    case DistKind::uniform: return "uniform";
  }
  return "?";
}

inline std::string_view to_string(RrddMode mode) {
  switch (mode) {
    case RrddMode::none: return "none";
    case RrddMode::loose: return "loose";
    case RrddMode::tight: return "tight";
  }
  return "?";
}

inline std::optional<DistKind> parse_dist_kind(std::string_view s) {
  if (s == "exponential") return DistKind::exponential;
  if (s == "gaussian" || s == "normal") return DistKind::gaussian;
  if (s == "uniform") return DistKind::uniform;
  return std::nullopt;
}

inline std::optional<RrddMode> parse_rrdd(std::string_view s) {
  if (s == "none") return RrddMode::none;
  if (s == "loose") return RrddMode::loose;
  if (s == "tight") return RrddMode::tight;
  return std::nullopt;
}

/// Release-date distribution. Absent parameters are derived from the
/// scheduling horizon by the generator.
struct DistSpec {
  DistKind kind = DistKind::uniform;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> sigma;
  std::optional<double> a;
  std::optional<double> b;

  /// True when every parameter the kind needs is present.
  bool resolved() const {
    switch (kind) {
      case DistKind::exponential: return lambda.has_value();
      case DistKind::gaussian: return mu.has_value() && sigma.has_value();
      case DistKind::uniform: return a.has_value() && b.has_value();
    }
    return false;
  }

  friend bool operator==(const DistSpec&, const DistSpec&) = default;
};

inline std::vector<std::string> validate_dist(const DistSpec& d) {
  std::vector<std::string> out;
  const bool exp = d.kind == DistKind::exponential;
  const bool gau = d.kind == DistKind::gaussian;
  const bool uni = d.kind == DistKind::uniform;
  if (d.lambda && !exp) out.emplace_back("lambda given for non-exponential distribution");
  if ((d.mu || d.sigma) && !gau) out.emplace_back("mu/sigma given for non-gaussian distribution");
  if ((d.a || d.b) && !uni) out.emplace_back("a/b given for non-uniform distribution");
  if (d.lambda && !(*d.lambda > 0.0)) out.emplace_back("lambda must be > 0");
  if (d.sigma && !(*d.sigma > 0.0)) out.emplace_back("sigma must be > 0");
  if (d.a && d.b && !(*d.a < *d.b)) out.emplace_back("uniform bounds require a < b");
  return out;
}

struct InstanceParams {
  std::int64_t count = 1;
  std::int64_t jobs = 1;
  std::int64_t machines = 1;
  std::int64_t tasks_per_job = 1;
  std::int64_t speeds = 1;
  DistSpec dist;
  RrddMode rrdd = RrddMode::none;
  std::uint64_t seed = 0;
  std::pair<Time, Time> base_time_range{1, 100};

  friend bool operator==(const InstanceParams&, const InstanceParams&) = default;
};

/// One entry per violated invariant; empty means valid.
inline std::vector<std::string> validate_params(const InstanceParams& p) {
  std::vector<std::string> out;
  if (p.count < 1) out.emplace_back("count must be ≥ 1");
  if (p.jobs < 1) out.emplace_back("jobs must be ≥ 1");
  if (p.machines < 1) out.emplace_back("machines must be ≥ 1");
  if (p.tasks_per_job < 1) out.emplace_back("tasks_per_job must be ≥ 1");
  if (p.speeds < 1) out.emplace_back("speeds must be ≥ 1");
  if (p.tasks_per_job > p.machines) out.emplace_back("tasks_per_job exceeds machines");
  if (p.base_time_range.first < 1) out.emplace_back("base time lower bound must be ≥ 1");
  if (p.base_time_range.first > p.base_time_range.second)
    out.emplace_back("base time range requires lo ≤ hi");
  for (auto& v : validate_dist(p.dist)) out.push_back(std::move(v));
  return out;
}

struct TaskSpec {
  std::int64_t job = 0;
  std::int64_t position = 0;
  std::int64_t machine = 0;
  Time base_time = 1;
  std::vector<Time> times;       // per speed, non-increasing
  std::vector<Energy> energies;  // per speed, non-decreasing
  Time release = 0;
  DueDate due;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

/// Ordered speed multipliers x_s.
struct SpeedGrid {
  std::vector<double> multipliers;

  std::size_t size() const { return multipliers.size(); }
  double operator[](std::size_t s) const { return multipliers[s]; }

  friend bool operator==(const SpeedGrid&, const SpeedGrid&) = default;
};

struct InstanceMetadata {
  std::uint64_t seed = 0;
  std::int64_t index = 0;
  DistSpec dist;
  RrddMode rrdd = RrddMode::none;
  std::pair<Time, Time> base_time_range{1, 100};
  std::int64_t source_speeds = 1;  // speed count at generation, before any projection
  std::string generator_version{kGeneratorVersion};
  std::string prng_id;
  std::string rounding{kRounding};
  // Derivations applied after generation. `projection` holds the kept
  // speed columns relative to the generated grid (empty = all of them).
  std::vector<std::int64_t> projection;
  bool relaxed = false;

  friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

struct Instance {
  std::vector<std::vector<TaskSpec>> jobs;
  std::int64_t machines = 0;
  SpeedGrid speed_multipliers;
  InstanceMetadata metadata;

  std::size_t job_count() const { return jobs.size(); }
  std::size_t speed_count() const { return speed_multipliers.size(); }
  std::size_t tasks_per_job() const { return jobs.empty() ? 0 : jobs.front().size(); }
  std::size_t task_count() const {
    std::size_t n = 0;
    for (const auto& j : jobs) n += j.size();
    return n;
  }
  const TaskSpec& task(std::size_t job, std::size_t pos) const { return jobs[job][pos]; }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Start time and chosen speed of one task.
struct Assignment {
  Time start = 0;
  std::int64_t speed = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Per-task assignments, indexed [job][position].
struct Schedule {
  std::vector<std::vector<Assignment>> entries;

  const Assignment& at(std::size_t job, std::size_t pos) const { return entries[job][pos]; }
  Assignment& at(std::size_t job, std::size_t pos) { return entries[job][pos]; }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct ObjectiveReport {
  Time makespan = 0;
  Energy total_energy = 0;
  Time total_tardiness = 0;

  friend bool operator==(const ObjectiveReport&, const ObjectiveReport&) = default;
};

/// Thrown when a payload is well-formed but breaks a model invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "validation failed:";
    for (const auto& item : v) s += "\n  " + item;
    return s;
  }
  std::vector<std::string> violations_;
};

}  // namespace ejsp
