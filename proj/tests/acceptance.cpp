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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Usage: acceptance <curve_oracle.csv>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ejsp/cli.hpp"
#include "ejsp/ejsp.hpp"
#include "test_util.hpp"

using namespace ejsp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct OracleTable {
  std::map<int, double> energy;          // x -> f(x)
  std::map<std::string, double> time;    // "x.xx" -> g(x)
};

OracleTable load_oracle(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  OracleTable t;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string table, x, value;
    std::getline(row, table, ',');
    std::getline(row, x, ',');
    std::getline(row, value, ',');
    if (table == "F")
      t.energy[std::stoi(x)] = std::stod(value);
    else if (table == "G")
      t.time[x] = std::stod(value);
  }
  return t;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"ejsp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

void set_threads(const char* value) {
  if (value)
    ::setenv("EJSP_THREADS", value, 1);
  else
    ::unsetenv("EJSP_THREADS");
}

/// Empty when both directories hold the same file names with equal bytes.
std::string compare_dirs(const fs::path& a, const fs::path& b) {
  std::set<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(a)) names_a.insert(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) names_b.insert(e.path().filename().string());
  if (names_a != names_b) return "file sets differ";
  for (const auto& n : names_a)
    if (read_file(a / n) != read_file(b / n)) return n + " differs";
  return {};
}

Outcome formula_anchors(const OracleTable& oracle) {
  std::ostringstream d;
  bool ok = energy_percentage(0) == 100 && energy_percentage(50) == 60 && energy_percentage(100) == 36;
  d << "f(0,50,100)=" << energy_percentage(0) << "," << energy_percentage(50) << "," << energy_percentage(100);
  double worst = 0;
  for (const auto& [x, key] : {std::pair{1.0, "1.00"}, {0.5, "0.50"}, {3.0, "3.00"}})
    worst = std::max(worst, std::abs(time_fraction(x) - oracle.time.at(key)));
  ok = ok && worst <= 1e-3;
  d << "; g(1,0.5,3)=" << time_fraction(1.0) << "," << time_fraction(0.5) << "," << time_fraction(3.0)
    << " max|err|=" << worst << " (tol 1e-3)";
  return {ok, d.str()};
}

Outcome grid_anchor() {
  const std::vector<double> want{0.5, 1.125, 1.75, 2.375, 3.0};
  const auto grid = speed_grid(5);
  double worst = grid.size() == want.size() ? 0.0 : 1.0;
  for (std::size_t i = 0; i < std::min(grid.size(), want.size()); ++i)
    worst = std::max(worst, std::abs(grid[i] - want[i]));
  const auto sub = project_speeds(generate_instance(InstanceParams{1, 2, 2, 2, 5, {}, RrddMode::none, 0, {1, 100}}, 0),
                                  {0, 2, 4});
  const bool sub_ok = sub.speed_multipliers.multipliers == std::vector<double>{0.5, 1.75, 3.0};
  std::ostringstream d;
  d << "max|err|=" << worst << " (tol 1e-12); {0,2,4} -> {0.5,1.75,3} " << (sub_ok ? "ok" : "wrong");
  return {worst <= 1e-12 && sub_ok, d.str()};
}

Outcome monotonicity() {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<Time> base(1, 100);
  std::uniform_int_distribution<std::int64_t> speeds(1, 8);
  constexpr int kTasks = 20000;
  int good = 0;
  for (int i = 0; i < kTasks; ++i) {
    const auto scaled = scale_task(base(rng), speed_grid(speeds(rng)));
    bool ok = true;
    for (std::size_t s = 1; s < scaled.times.size(); ++s)
      ok = ok && scaled.times[s] <= scaled.times[s - 1] && scaled.energies[s] >= scaled.energies[s - 1];
    good += ok;
  }
  return {good == kTasks, std::to_string(good) + "/" + std::to_string(kTasks) + " tasks monotone"};
}

Outcome determinism() {
  const auto root = test_support::scratch_dir("acceptance_determinism");
  const std::vector<std::string> common{"generate", "--jobs",  "30",          "--machines", "10", "--speeds", "5",
                                        "--dist",   "exponential", "--rrdd", "tight",      "--seed", "7"};
  auto gen = [&](const char* threads, const std::string& count, const std::string& name,
                 bool paper = false) {
    set_threads(threads);
    auto args = paper ? std::vector<std::string>{"generate", "--paper-suite", "--seed", "7"} : common;
    args.insert(args.end(), {"--count", count, "--out", (root / name).string()});
    return run(args);
  };
  int codes = 0;
  codes |= gen("1", "100", "a1");
  codes |= gen("1", "100", "a2");
  codes |= gen(nullptr, "100", "auto");
  codes |= gen("4", "100", "four");
  codes |= gen("1", "10", "prefix");
  codes |= gen("1", "30", "paper1", true);
  codes |= gen("4", "30", "paper4", true);
  codes |= gen("4", "10", "paper_prefix", true);
  set_threads(nullptr);
  if (codes != 0) return {false, "generate returned non-zero"};

  std::string problem;
  for (const auto& [x, y] : {std::pair{"a1", "a2"}, {"a1", "auto"}, {"a1", "four"}, {"paper1", "paper4"}})
    if (auto why = compare_dirs(root / x, root / y); !why.empty()) problem += std::string(x) + " vs " + y + ": " + why + "; ";
  for (const auto& [small, big] : {std::pair{"prefix", "a1"}, {"paper_prefix", "paper1"}}) {
    std::size_t n = 0;
    for (const auto& f : list_instance_files(root / small)) {
      ++n;
      if (read_file(f) != read_file(root / big / f.filename())) problem += f.filename().string() + " not a prefix; ";
    }
    if (n == 0) problem += std::string(small) + " is empty; ";
  }
  return {problem.empty(), problem.empty() ? "reruns, threads 1/auto/4 and Q=10 prefix of Q=100 byte-identical"
                                           : problem};
}

Outcome paper_suite() {
  const auto dir = test_support::scratch_dir("acceptance_paper");
  if (run({"generate", "--paper-suite", "--seed", "0", "--out", dir.string()}) != 0)
    return {false, "generate --paper-suite failed"};
  const auto files = list_instance_files(dir);
  std::map<std::string, int> variants;
  std::set<DistKind> dists;
  std::size_t jmin = 1 << 30, jmax = 0;
  std::int64_t mmin = 1 << 30, mmax = 0;
  int invalid = 0;
  for (const auto& f : files) {
    const auto inst = parse_instance(read_file(f));
    if (!validate_instance(inst).empty()) ++invalid;
    ++variants[variant_tag(inst.metadata)];
    dists.insert(inst.metadata.dist.kind);
    jmin = std::min(jmin, inst.job_count());
    jmax = std::max(jmax, inst.job_count());
    mmin = std::min(mmin, inst.machines);
    mmax = std::max(mmax, inst.machines);
  }
  const bool ok = files.size() == 1500 && variants["orig"] == 500 && variants["s0_2_4"] == 500 &&
                  variants["s2"] == 500 && dists.size() == 3 && jmin >= 30 && jmax <= 250 && mmin >= 3 &&
                  mmax <= 20 && invalid == 0 && verify_manifest(dir).empty();
  std::ostringstream d;
  d << files.size() << " files (orig " << variants["orig"] << ", s0_2_4 " << variants["s0_2_4"] << ", s2 "
    << variants["s2"] << "), J in [" << jmin << "," << jmax << "], M in [" << mmin << "," << mmax << "], "
    << dists.size() << " distributions, " << invalid << " invalid";
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(606);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = test_support::random_tiny_instance(rng);
    const auto best = brute_force_best(inst, Objective::makespan).value;
    for (auto rule : {DispatchRule::fifo, DispatchRule::spt, DispatchRule::edd})
      for (auto policy : {SpeedPolicy::slowest, SpeedPolicy::reference, SpeedPolicy::fastest}) {
        const auto d = dispatch(inst, SolverConfig{rule, policy, 0});
        const auto i = improve(inst, d, 1000);
        violations += best > objectives(inst, d).makespan;
        violations += best > objectives(inst, i).makespan;
      }
  }
  const auto anchor = test_support::two_by_two_anchor();
  const auto anchor_best = brute_force_best(anchor, Objective::makespan).value;
  Time reached = std::numeric_limits<Time>::max();
  for (auto rule : {DispatchRule::fifo, DispatchRule::spt, DispatchRule::edd})
    for (auto policy : {SpeedPolicy::slowest, SpeedPolicy::reference, SpeedPolicy::fastest})
      reached = std::min(reached, objectives(anchor, solve(anchor, SolverConfig{rule, policy, 100})).makespan);
  // Improve also has to recover the optimum from a poor feasible start.
  const Schedule poor{{{{5, 0}, {7, 0}}, {{0, 0}, {2, 0}}}};
  const Time from_poor = objectives(anchor, improve(anchor, poor, 100)).makespan;
  std::ostringstream d;
  d << violations << " dominance violations over 100 instances x 9 configs; anchor optimum " << anchor_best
    << ", improve reaches " << reached << " (from poor start " << from_poor << ")";
  return {violations == 0 && anchor_best == 5 && reached == 5 && from_poor == 5, d.str()};
}

Outcome distribution_stats() {
  constexpr int kN = 100000;
  std::ostringstream d;
  bool ok = true;
  auto moments = [&](const DistSpec& spec, std::uint64_t seed) {
    Stream s = make_stream(seed, 0);
    double sum = 0, sq = 0;
    for (int i = 0; i < kN; ++i) {
      const double v = sample(s, spec);
      sum += v;
      sq += v * v;
    }
    const double mean = sum / kN;
    return std::pair{mean, std::sqrt(sq / kN - mean * mean)};
  };
  auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
  std::uint64_t seed = 1;
  for (double lambda : {0.01, 0.5, 4.0}) {
    const auto [m, sd] = moments(DistSpec{DistKind::exponential, lambda}, seed++);
    ok = ok && rel(m, 1 / lambda) <= 0.02;
    d << "exp(" << lambda << ") mean err " << rel(m, 1 / lambda) << "; ";
  }
  for (auto [a, b] : {std::pair{0.0, 100.0}, {10.0, 20.0}}) {
    DistSpec spec{DistKind::uniform};
    spec.a = a;
    spec.b = b;
    const auto [m, sd] = moments(spec, seed++);
    ok = ok && rel(m, (a + b) / 2) <= 0.01;
    d << "uniform(" << a << "," << b << ") mean err " << rel(m, (a + b) / 2) << "; ";
  }
  for (auto [mu, sigma] : {std::pair{50.0, 10.0}, {250.0, 80.0}}) {
    DistSpec spec{DistKind::gaussian};
    spec.mu = mu;
    spec.sigma = sigma;
    const auto [m, sd] = moments(spec, seed++);
    ok = ok && rel(m, mu) <= 0.02 && rel(sd, sigma) <= 0.02;
    d << "gauss(" << mu << "," << sigma << ") mean err " << rel(m, mu) << " sd err " << rel(sd, sigma) << "; ";
  }
  return {ok, d.str() + "tol 2%/1%/2%"};
}

Outcome round_trip() {
  std::mt19937_64 rng(8080);
  std::map<std::string, int> kinds;
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    auto params = test_support::random_params(rng, 20, 8);
    params.rrdd = static_cast<RrddMode>(i % 3);
    params.count = 1000;
    const int variant = (i / 3) % 5;
    if (variant == 1 || variant == 2) params.speeds = 5;
    auto inst = generate_instance(params, static_cast<std::int64_t>(rng() % 1000));
    std::string kind = "orig";
    if (variant == 1) {
      inst = paper_variants(inst)[1];
      kind = "s0_2_4";
    } else if (variant == 2) {
      inst = paper_variants(inst)[2];
      kind = "s2";
    } else if (variant == 3) {
      inst = relax_dates(inst);
      kind = "relax";
    } else if (variant == 4 && inst.speed_count() >= 3) {
      inst = relax_dates(project_speeds(inst, {1, static_cast<std::int64_t>(inst.speed_count()) - 1}));
      kind = "project+relax";
    }
    ++kinds[kind + "/" + std::string(to_string(params.rrdd))];
    if (!(read_instance(write_instance(inst)) == inst)) ++mismatches;
  }
  std::ostringstream d;
  d << mismatches << " mismatches over 1000 instances, " << kinds.size() << " variant/rrdd combinations";
  return {mismatches == 0 && kinds.size() == 15, d.str()};
}

Outcome curve_tables(const OracleTable& oracle) {
  const auto tables = export_curves();
  double worst = 0;
  std::size_t missing = 0;
  for (const auto& row : tables.energy) {
    const auto it = oracle.energy.find(static_cast<int>(std::lround(row.x)));
    if (it == oracle.energy.end()) ++missing; else worst = std::max(worst, std::abs(row.value - it->second));
  }
  for (const auto& row : tables.time) {
    const auto it = oracle.time.find(format_fixed(row.x, 2));
    if (it == oracle.time.end()) ++missing; else worst = std::max(worst, std::abs(row.value - it->second));
  }
  const auto energy_csv = energy_curve_csv(tables);
  const auto time_csv = time_curve_csv(tables);
  const auto energy_lines = std::count(energy_csv.begin(), energy_csv.end(), '\n') - 1;
  const auto time_lines = std::count(time_csv.begin(), time_csv.end(), '\n') - 1;
  std::ostringstream d;
  d << tables.energy.size() << " + " << tables.time.size() << " rows (csv " << energy_lines << " + " << time_lines
    << "), max|err|=" << worst << " (tol 1e-6), " << missing << " unmatched";
  return {tables.energy.size() == 101 && tables.time.size() == 251 && energy_lines == 101 && time_lines == 251 &&
              missing == 0 && worst <= 1e-6,
          d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <curve_oracle.csv>\n";
    return 2;
  }
  OracleTable oracle;
  try {
    oracle = load_oracle(argv[1]);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no limit
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "formula anchors", 1, [&] { return formula_anchors(oracle); }},
      {2, "speed grid anchor", 1, grid_anchor},
      {3, "monotonicity over random tasks", 5, monotonicity},
      {4, "determinism and prefix stability", 30, determinism},
      {5, "paper-style suite composition", 60, paper_suite},
      {6, "brute-force oracle dominance", 60, oracle_equivalence},
      {7, "distribution statistics", 5, distribution_stats},
      {8, "write/read round trip", 10, round_trip},
      {9, "curve tables", 1, [&] { return curve_tables(oracle); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail << " ("
              << secs << " s, limit " << c.limit_s << " s" << (in_time ? "" : ", exceeded") << ")\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
