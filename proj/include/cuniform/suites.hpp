#pragma once

#include <cstdint>
#include <vector>

#include "cuniform/controller.hpp"
#include "cuniform/simworld.hpp"

namespace cuniform {

// Canonical sudden-obstacle scenario: the vehicle starts at the origin facing
// the goal; a circular obstacle sits on the start-goal line and becomes
// visible at `appearance_time`. Its lateral offset is drawn uniformly in
// [-radius, +radius] per trial, perpendicular to the start-goal line.
struct SuddenSuiteConfig {
  double appearance_time = 1.0;  // 0 = fully visible from the start
  int trials = 20;
  double obstacle_radius = 0.5;
  double obstacle_distance = 2.0;  // along the start-goal line [m]
  double goal_x = 5.0;
  double goal_y = 0.0;
  double time_limit = 15.0;
};

struct SuiteResult {
  int successes = 0;
  int trials = 0;
  double success_rate = 0.0;
  std::vector<RunRecord> runs;
};

// Trial placements and run seeds derive from (seed, trial) only, never from
// the sampler kind, so different samplers face identical scenarios.
SuiteResult sudden_obstacle_suite(const SystemModel& model,
                                  const SamplerSetup& sampler,
                                  const CostConfig& cost,
                                  const SuddenSuiteConfig& suite,
                                  std::uint64_t seed);

Environment make_sudden_environment(const SuddenSuiteConfig& suite,
                                    double lateral_offset);

// Runs `starts` paired episodes from collision-free poses drawn uniformly in
// the environment's start region, heading toward the goal. An episode fails
// on collision or when the environment time limit runs out.
SuiteResult cluttered_suite(const SystemModel& model, const Environment& env,
                            const SamplerSetup& sampler, const CostConfig& cost,
                            int starts, std::uint64_t seed);

}  // namespace cuniform
