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

// Command-line front end: generate | derive | validate | stats | solve | curves.
//
// Exit codes: 0 success, 1 validation or feasibility failures found,
// 2 usage or parameter error.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ejsp/core.hpp"
#include "ejsp/eval.hpp"
#include "ejsp/generator.hpp"
#include "ejsp/io.hpp"
#include "ejsp/parallel.hpp"
#include "ejsp/random.hpp"
#include "ejsp/solver.hpp"
#include "ejsp/suite_io.hpp"
#include "ejsp/variants.hpp"

namespace ejsp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

/// Salt separating the preset's (jobs, machines, dist, rrdd) draws from the
/// instance streams of the same seed.
inline constexpr std::uint64_t kPaperPresetSalt = 0x7061706572737569ULL;

struct PaperPreset {
  std::int64_t jobs_lo = 30, jobs_hi = 250;
  std::int64_t machines_lo = 3, machines_hi = 20;
  std::int64_t speeds = 5;
};

/// Parameters of original q in the paper-style suite. Tasks per job equal
/// the machine count; the distribution and rrdd mode are drawn uniformly.
inline InstanceParams paper_instance_params(std::uint64_t seed, std::int64_t count, std::int64_t q,
                                            std::pair<Time, Time> base_range = {1, 100},
                                            const PaperPreset& preset = {}) {
  Stream s = make_stream(seed ^ kPaperPresetSalt, static_cast<std::uint64_t>(q));
  InstanceParams p;
  p.count = count;
  p.jobs = sample_int_range(s, preset.jobs_lo, preset.jobs_hi);
  p.machines = sample_int_range(s, preset.machines_lo, preset.machines_hi);
  p.tasks_per_job = p.machines;
  p.speeds = preset.speeds;
  static constexpr DistKind kinds[] = {DistKind::exponential, DistKind::gaussian, DistKind::uniform};
  p.dist.kind = kinds[sample_int_range(s, 0, 2)];
  p.rrdd = sample_int_range(s, 0, 1) == 0 ? RrddMode::loose : RrddMode::tight;
  p.seed = seed;
  p.base_time_range = base_range;
  return p;
}

/// Originals followed in place by their two speed variants.
inline std::vector<Instance> generate_paper_suite(std::uint64_t seed, std::int64_t count,
                                                  std::pair<Time, Time> base_range, unsigned threads) {
  std::vector<std::vector<Instance>> groups(static_cast<std::size_t>(count));
  parallel_for(groups.size(), threads, [&](std::size_t q) {
    const auto qi = static_cast<std::int64_t>(q);
    groups[q] = paper_variants(generate_instance(paper_instance_params(seed, count, qi, base_range), qi));
  });
  std::vector<Instance> out;
  out.reserve(groups.size() * 3);
  for (auto& g : groups)
    for (auto& inst : g) out.push_back(std::move(inst));
  return out;
}

namespace detail {

inline std::string flag_for(const std::string& violation) {
  struct Rule {
    const char* needle;
    const char* flag;
  };
  static constexpr Rule rules[] = {
      {"tasks_per_job exceeds", "--tasks/--machines"},
      {"tasks_per_job", "--tasks"},
      {"base time", "--base-lo/--base-hi"},
      {"count", "--count"},
      {"jobs", "--jobs"},
      {"machines", "--machines"},
      {"speeds", "--speeds"},
      {"lambda", "--lambda"},
      {"mu/sigma", "--mu/--sigma"},
      {"sigma", "--sigma"},
      {"a/b", "--a/--b"},
      {"uniform bounds", "--a/--b"},
  };
  for (const auto& r : rules)
    if (violation.find(r.needle) != std::string::npos) return r.flag;
  return "parameters";
}

struct LoadedSet {
  std::vector<std::filesystem::path> files;
  std::vector<Instance> instances;
};

/// Loads every instance under `paths`; bad files are reported on `err`.
/// Returns nullopt (after reporting) when any file fails.
inline std::optional<LoadedSet> load_all(const std::vector<std::string>& paths, std::ostream& err) {
  LoadedSet set;
  bool ok = true;
  for (const auto& p : paths)
    for (const auto& f : list_instance_files(p)) set.files.push_back(f);
  set.instances.resize(set.files.size());
  for (std::size_t i = 0; i < set.files.size(); ++i) {
    try {
      set.instances[i] = load_instance(set.files[i]);
    } catch (const std::exception& e) {
      err << e.what() << '\n';
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return set;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-aware job shop instance configurator", "ejsp"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a suite of instances and its manifest");
  std::int64_t count = 1, jobs = 0, machines = 0, tasks = 0, speeds = 5;
  std::string dist_name = "uniform", rrdd_name = "none", out_dir;
  std::optional<double> lambda, mu, sigma, dist_a, dist_b;
  std::uint64_t seed = 0;
  Time base_lo = 1, base_hi = 100;
  bool paper_suite = false, emit_json = false;
  auto* count_opt = gen->add_option("--count", count, "Number of instances (Q)");
  auto* jobs_opt = gen->add_option("--jobs", jobs, "Jobs per instance (J)");
  auto* machines_opt = gen->add_option("--machines", machines, "Machines (M)");
  auto* tasks_opt = gen->add_option("--tasks", tasks, "Tasks per job (T <= M); defaults to M");
  auto* speeds_opt = gen->add_option("--speeds", speeds, "Speed count (S)");
  auto* dist_opt = gen->add_option("--dist", dist_name, "Release distribution")
                       ->check(CLI::IsMember({"exponential", "gaussian", "normal", "uniform"}));
  auto* rrdd_opt = gen->add_option("--rrdd", rrdd_name, "Release/due date mode")
                       ->check(CLI::IsMember({"none", "loose", "tight"}));
  auto* lambda_opt = gen->add_option("--lambda", lambda, "Exponential rate");
  auto* mu_opt = gen->add_option("--mu", mu, "Gaussian mean");
  auto* sigma_opt = gen->add_option("--sigma", sigma, "Gaussian standard deviation");
  auto* a_opt = gen->add_option("--a", dist_a, "Uniform lower bound");
  auto* b_opt = gen->add_option("--b", dist_b, "Uniform upper bound");
  gen->add_option("--seed", seed, "Base random seed");
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--base-lo", base_lo, "Lowest base processing time");
  gen->add_option("--base-hi", base_hi, "Highest base processing time");
  gen->add_flag("--paper-suite", paper_suite,
                "Preset: J in [30,250], M in [3,20], mixed distributions, 5 speeds, plus speed variants");
  gen->add_flag("--json", emit_json, "Also write a JSON export next to each instance");
  for (auto* o : {jobs_opt, machines_opt, tasks_opt, speeds_opt, dist_opt, rrdd_opt, lambda_opt, mu_opt,
                  sigma_opt, a_opt, b_opt})
    o->excludes("--paper-suite");

  // derive
  auto* der = app.add_subcommand("derive", "Derive date-relaxed or speed-projected variants");
  std::vector<std::string> derive_in;
  std::string variants_name, subset_text, derive_out;
  der->add_option("--in", derive_in, "Instance files or suite directories")->required();
  der->add_option("--out", derive_out, "Output directory")->required();
  der->add_option("--variants", variants_name, "paper | relax | project")
      ->required()
      ->check(CLI::IsMember({"paper", "relax", "project"}));
  der->add_option("--subset", subset_text, "Speed indices for project, e.g. 0,2,4");

  // validate
  auto* val = app.add_subcommand("validate", "Check instances (and manifests) and print violations");
  std::vector<std::string> validate_paths;
  val->add_option("paths", validate_paths, "Instance files or suite directories")->required();

  // stats
  auto* sta = app.add_subcommand("stats", "Print a suite summary as CSV");
  std::vector<std::string> stats_paths;
  std::string stats_out;
  sta->add_option("paths", stats_paths, "Instance files or suite directories")->required();
  sta->add_option("--out", stats_out, "Write CSV to this file instead of stdout");

  // solve
  auto* sol = app.add_subcommand("solve", "Run a dispatching baseline and print objectives as CSV");
  std::vector<std::string> solve_paths;
  std::string rule_name = "fifo", policy_name = "reference";
  std::int64_t budget = 0;
  sol->add_option("paths", solve_paths, "Instance files or suite directories")->required();
  sol->add_option("--rule", rule_name, "fifo | spt | edd")->check(CLI::IsMember({"fifo", "spt", "edd"}));
  sol->add_option("--speed-policy", policy_name, "slowest | reference | fastest")
      ->check(CLI::IsMember({"slowest", "reference", "fastest"}));
  sol->add_option("--budget", budget, "Hill-climb iterations (0 = off)")->check(CLI::NonNegativeNumber);

  // curves
  auto* cur = app.add_subcommand("curves", "Write the energy and time calibration curves as CSV");
  std::string curves_out;
  cur->add_option("--out", curves_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const unsigned threads = thread_count_from_env();

  try {
    if (*gen) {
      std::vector<Instance> suite;
      nlohmann::ordered_json params_json;
      std::string suite_id;
      if (paper_suite) {
        if (count_opt->count() == 0) count = 500;
        if (count < 1) {
          err << "--count: must be >= 1\n";
          return kExitUsage;
        }
        if (base_lo < 1 || base_lo > base_hi) {
          err << "--base-lo/--base-hi: require 1 <= lo <= hi\n";
          return kExitUsage;
        }
        suite = generate_paper_suite(seed, count, {base_lo, base_hi}, threads);
        params_json = {{"preset", "paper"},
                       {"count", count},
                       {"seed", seed},
                       {"speeds", 5},
                       {"variants", {"orig", "s0_2_4", "s2"}},
                       {"base_range", {base_lo, base_hi}}};
        suite_id = "paper-seed" + std::to_string(seed);
      } else {
        if (jobs_opt->count() == 0 || machines_opt->count() == 0) {
          err << "--jobs and --machines are required unless --paper-suite is given\n";
          return kExitUsage;
        }
        InstanceParams p;
        p.count = count;
        p.jobs = jobs;
        p.machines = machines;
        p.tasks_per_job = tasks_opt->count() ? tasks : machines;
        p.speeds = speeds;
        p.dist.kind = *parse_dist_kind(dist_name);
        p.dist.lambda = lambda;
        p.dist.mu = mu;
        p.dist.sigma = sigma;
        p.dist.a = dist_a;
        p.dist.b = dist_b;
        p.rrdd = *parse_rrdd(rrdd_name);
        p.seed = seed;
        p.base_time_range = {base_lo, base_hi};
        if (auto errs = validate_params(p); !errs.empty()) {
          for (const auto& e : errs) err << detail::flag_for(e) << ": " << e << '\n';
          return kExitUsage;
        }
        suite = generate_suite(p, threads);
        params_json = params_to_json(p);
        suite_id = "seed" + std::to_string(seed) + "-q" + std::to_string(count);
      }
      const auto manifest = write_suite(suite, out_dir, suite_id, params_json, threads, emit_json);
      err << "wrote " << manifest.entries.size() << " instances to " << out_dir << '\n';
      return kExitOk;
    }

    if (*der) {
      std::vector<std::int64_t> subset;
      if (variants_name == "project") {
        if (subset_text.empty()) {
          err << "--subset: required with --variants project\n";
          return kExitUsage;
        }
        try {
          subset = parse_index_list(subset_text);
        } catch (const std::invalid_argument& e) {
          err << "--subset: " << e.what() << '\n';
          return kExitUsage;
        }
      }
      auto loaded = detail::load_all(derive_in, err);
      if (!loaded) return kExitViolations;
      std::vector<Instance> derived;
      for (std::size_t i = 0; i < loaded->instances.size(); ++i) {
        const auto& inst = loaded->instances[i];
        try {
          if (variants_name == "paper") {
            for (auto& v : paper_variants(inst)) derived.push_back(std::move(v));
          } else if (variants_name == "relax") {
            derived.push_back(relax_dates(inst));
          } else {
            derived.push_back(project_speeds(inst, subset));
          }
        } catch (const std::invalid_argument& e) {
          err << loaded->files[i].string() << ": " << e.what() << '\n';
          return kExitUsage;
        }
      }
      nlohmann::ordered_json params_json = {{"derive", variants_name}};
      if (!subset.empty()) params_json["subset"] = subset;
      write_suite(derived, derive_out, "derived-" + variants_name, params_json, threads);
      err << "wrote " << derived.size() << " instances to " << derive_out << '\n';
      return kExitOk;
    }

    if (*val) {
      std::size_t bad = 0, checked = 0;
      for (const auto& p : validate_paths) {
        for (const auto& f : list_instance_files(p)) {
          ++checked;
          try {
            const auto inst = parse_instance(read_file(f));
            for (const auto& v : validate_instance(inst)) {
              out << f.string() << ": " << v << '\n';
              ++bad;
            }
          } catch (const ParseError& e) {
            out << f.string() << ": " << e.what() << '\n';
            ++bad;
          }
        }
        if (std::filesystem::is_directory(p) && std::filesystem::exists(std::filesystem::path(p) / kManifestName)) {
          for (const auto& v : verify_manifest(p)) {
            out << v << '\n';
            ++bad;
          }
        }
      }
      err << checked << " files checked, " << bad << " violations\n";
      return bad == 0 ? kExitOk : kExitViolations;
    }

    if (*sta) {
      auto loaded = detail::load_all(stats_paths, err);
      if (!loaded) return kExitViolations;
      std::vector<std::string> labels;
      for (const auto& f : loaded->files) labels.push_back(f.filename().string());
      const auto csv = stats_csv(suite_stats(loaded->instances, labels));
      if (stats_out.empty())
        out << csv;
      else
        write_file(stats_out, csv);
      return kExitOk;
    }

    if (*sol) {
      auto loaded = detail::load_all(solve_paths, err);
      if (!loaded) return kExitViolations;
      SolverConfig config{*parse_rule(rule_name), *parse_speed_policy(policy_name), budget};
      const auto n = loaded->instances.size();
      std::vector<std::string> rows(n);
      std::vector<std::string> failures(n);
      parallel_for(n, threads, [&](std::size_t i) {
        const auto& inst = loaded->instances[i];
        const auto sched = solve(inst, config);
        if (auto errs = validate_schedule(inst, sched); !errs.empty()) {
          failures[i] = loaded->files[i].string() + ": infeasible schedule: " + errs.front();
          return;
        }
        const auto r = objectives(inst, sched);
        rows[i] = loaded->files[i].filename().string() + ',' + rule_name + ',' + policy_name + ',' +
                  std::to_string(budget) + ',' + std::to_string(r.makespan) + ',' +
                  std::to_string(r.total_energy) + ',' + std::to_string(r.total_tardiness) + '\n';
      });
      out << "instance,rule,speed_policy,budget,makespan,total_energy,total_tardiness\n";
      bool infeasible = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i].empty()) {
          err << failures[i] << '\n';
          infeasible = true;
        } else {
          out << rows[i];
        }
      }
      return infeasible ? kExitViolations : kExitOk;
    }

    if (*cur) {
      std::error_code ec;
      std::filesystem::create_directories(curves_out, ec);
      if (ec) {
        err << curves_out << ": " << ec.message() << '\n';
        return kExitUsage;
      }
      const auto tables = export_curves();
      write_file(std::filesystem::path(curves_out) / "energy_curve.csv", energy_curve_csv(tables));
      write_file(std::filesystem::path(curves_out) / "time_curve.csv", time_curve_csv(tables));
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ejsp
