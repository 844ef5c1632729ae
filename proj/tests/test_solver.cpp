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

#include <gtest/gtest.h>

#include <random>

#include "ejsp/ejsp.hpp"
#include "test_util.hpp"

using namespace ejsp;
using test_support::task;

TEST(Dispatch, AnchorFifoSlowest) {
  const auto inst = test_support::two_by_two_anchor();
  const auto sched = dispatch(inst, SolverConfig{DispatchRule::fifo, SpeedPolicy::slowest, 0});
  ASSERT_TRUE(validate_schedule(inst, sched).empty());
  EXPECT_GE(objectives(inst, sched).makespan, brute_force_best(inst, Objective::makespan).value);
}

TEST(Dispatch, SingleJobIsSerial) {
  auto inst = assemble_instance(3, speed_grid(3), {});
  inst.jobs = {{}};
  for (std::int64_t m = 0; m < 3; ++m) {
    auto s = scale_task(10 + m * 7, inst.speed_multipliers);
    inst.jobs[0].push_back(task(m, s.times, s.energies, 4));
  }
  inst = assemble_instance(3, inst.speed_multipliers, inst.jobs);
  for (auto rule : {DispatchRule::fifo, DispatchRule::spt, DispatchRule::edd})
    for (auto policy : {SpeedPolicy::slowest, SpeedPolicy::reference, SpeedPolicy::fastest}) {
      const auto sched = dispatch(inst, SolverConfig{rule, policy, 0});
      const auto sp = static_cast<std::size_t>(policy_speed(inst.speed_multipliers, policy));
      Time serial = 4;
      for (const auto& t : inst.jobs[0]) serial += t.times[sp];
      EXPECT_EQ(objectives(inst, sched).makespan, serial);
    }
}

TEST(Dispatch, SpeedPolicies) {
  const auto inst = generate_instance(InstanceParams{1, 8, 4, 4, 5, {}, RrddMode::tight, 3, {1, 100}}, 0);
  EXPECT_EQ(policy_speed(inst.speed_multipliers, SpeedPolicy::reference), 1);  // 1.125 is nearest to 1
  EXPECT_EQ(policy_speed(speed_grid(3), SpeedPolicy::reference), 0);          // |0.5-1| < |1.75-1|
  for (auto policy : {SpeedPolicy::slowest, SpeedPolicy::fastest}) {
    const auto sched = dispatch(inst, SolverConfig{DispatchRule::edd, policy, 0});
    for (const auto& row : sched.entries)
      for (const auto& a : row) EXPECT_EQ(a.speed, policy == SpeedPolicy::fastest ? 4 : 0);
  }
}

TEST(Dispatch, AlwaysFeasibleOnGeneratedInstances) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = generate_instance(test_support::random_params(rng, 20, 6), 0);
    for (auto rule : {DispatchRule::fifo, DispatchRule::spt, DispatchRule::edd}) {
      const auto sched = dispatch(inst, SolverConfig{rule, SpeedPolicy::reference, 0});
      ASSERT_TRUE(validate_schedule(inst, sched).empty());
    }
  }
}

TEST(Dispatch, LowerSpeedNeverCostsMoreEnergy) {
  const auto inst = generate_instance(InstanceParams{1, 6, 3, 3, 5, {}, RrddMode::none, 12, {1, 100}}, 0);
  for (const auto& job : inst.jobs)
    for (const auto& t : job)
      for (std::size_t s = 1; s < t.energies.size(); ++s) EXPECT_LE(t.energies[s - 1], t.energies[s]);
  const auto slow = objectives(inst, dispatch(inst, SolverConfig{DispatchRule::fifo, SpeedPolicy::slowest, 0}));
  const auto fast = objectives(inst, dispatch(inst, SolverConfig{DispatchRule::fifo, SpeedPolicy::fastest, 0}));
  EXPECT_LE(slow.total_energy, fast.total_energy);
}

TEST(Improve, ZeroBudgetIsNoOp) {
  const auto inst = generate_instance(InstanceParams{1, 6, 3, 3, 3, {}, RrddMode::loose, 1, {1, 100}}, 0);
  const auto sched = dispatch(inst, SolverConfig{DispatchRule::spt, SpeedPolicy::slowest, 0});
  EXPECT_EQ(improve(inst, sched, 0), sched);
}

TEST(Improve, RejectsInfeasibleInput) {
  const auto inst = test_support::two_by_two_anchor();
  EXPECT_THROW(improve(inst, Schedule{{{{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}}}, 5), ValidationError);
}

TEST(Improve, ReachesAnchorOptimumFromBadSequence) {
  const auto inst = test_support::two_by_two_anchor();
  // m0 runs J1's task before J0's: feasible but makespan 10.
  const Schedule poor{{{{5, 0}, {7, 0}}, {{0, 0}, {2, 0}}}};
  ASSERT_TRUE(validate_schedule(inst, poor).empty());
  ASSERT_EQ(objectives(inst, poor).makespan, 10);
  const auto better = improve(inst, poor, 100);
  EXPECT_EQ(objectives(inst, better).makespan, 5);
}

TEST(Improve, MonotoneAndDeterministic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = generate_instance(test_support::random_params(rng, 8, 4), 0);
    const auto start = dispatch(inst, SolverConfig{DispatchRule::fifo, SpeedPolicy::slowest, 0});
    const auto a = improve(inst, start, 50);
    ASSERT_TRUE(validate_schedule(inst, a).empty());
    EXPECT_LE(objectives(inst, a).makespan, objectives(inst, start).makespan);
    EXPECT_EQ(a, improve(inst, start, 50));
  }
}

TEST(Solver, OracleDominatesHeuristics) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = test_support::random_tiny_instance(rng);
    const auto best = brute_force_best(inst, Objective::makespan).value;
    for (auto rule : {DispatchRule::fifo, DispatchRule::spt, DispatchRule::edd})
      for (auto policy : {SpeedPolicy::slowest, SpeedPolicy::reference, SpeedPolicy::fastest}) {
        const auto d = dispatch(inst, SolverConfig{rule, policy, 0});
        EXPECT_LE(best, objectives(inst, d).makespan);
        EXPECT_LE(best, objectives(inst, improve(inst, d, 1000)).makespan);
      }
  }
}

TEST(Solver, ParseNames) {
  EXPECT_EQ(parse_rule("edd"), DispatchRule::edd);
  EXPECT_EQ(parse_speed_policy("reference"), SpeedPolicy::reference);
  EXPECT_FALSE(parse_rule("lifo").has_value());
}
