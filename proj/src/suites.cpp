#include "cuniform/suites.hpp"

#include <cmath>
#include <stdexcept>

#include "cuniform/rng.hpp"

namespace cuniform {

Environment make_sudden_environment(const SuddenSuiteConfig& suite,
                                    double lateral_offset) {
  Environment env;
  env.goal_x = suite.goal_x;
  env.goal_y = suite.goal_y;
  env.time_limit = suite.time_limit;
  const double dist = std::hypot(suite.goal_x, suite.goal_y);
  if (!(dist > 0.0)) {
    throw std::invalid_argument("sudden suite: goal must not be the origin");
  }
  const double dir_x = suite.goal_x / dist;
  const double dir_y = suite.goal_y / dist;
  Circle circle;
  circle.cx = dir_x * suite.obstacle_distance - dir_y * lateral_offset;
  circle.cy = dir_y * suite.obstacle_distance + dir_x * lateral_offset;
  circle.radius = suite.obstacle_radius;
  env.obstacles.push_back({circle, suite.appearance_time});
  return env;
}

SuiteResult sudden_obstacle_suite(const SystemModel& model,
                                  const SamplerSetup& sampler,
                                  const CostConfig& cost,
                                  const SuddenSuiteConfig& suite,
                                  std::uint64_t seed) {
  if (suite.trials < 1) {
    throw std::invalid_argument("sudden suite: trials must be >= 1");
  }
  SuiteResult result;
  result.trials = suite.trials;
  result.runs.reserve(suite.trials);

  CostConfig trial_cost = cost;
  trial_cost.goal_x = suite.goal_x;
  trial_cost.goal_y = suite.goal_y;
  const State x0 = model.state_dim() == 1
                       ? State{0.0}
                       : State{0.0, 0.0, std::atan2(suite.goal_y, suite.goal_x)};

  for (int trial = 0; trial < suite.trials; ++trial) {
    Rng trial_rng = substream(seed, static_cast<std::uint64_t>(trial));
    const double offset =
        (2.0 * uniform01(trial_rng) - 1.0) * suite.obstacle_radius;
    const Environment env = make_sudden_environment(suite, offset);
    const std::uint64_t run_seed =
        splitmix64(seed ^ (0xA24BAED4963EE407ull *
                           static_cast<std::uint64_t>(trial + 1)));
    RunRecord run = run_controller(model, env, sampler, x0, trial_cost, run_seed);
    if (run.outcome == RunOutcome::success) ++result.successes;
    result.runs.push_back(std::move(run));
  }
  result.success_rate =
      static_cast<double>(result.successes) / static_cast<double>(result.trials);
  return result;
}

SuiteResult cluttered_suite(const SystemModel& model, const Environment& env,
                            const SamplerSetup& sampler, const CostConfig& cost,
                            int starts, std::uint64_t seed) {
  if (starts < 1) {
    throw std::invalid_argument("cluttered suite: starts must be >= 1");
  }
  if (!env.start_region) {
    throw std::invalid_argument("cluttered suite: environment has no start region");
  }
  SuiteResult result;
  result.trials = starts;
  result.runs.reserve(starts);

  CostConfig trial_cost = cost;
  trial_cost.goal_x = env.goal_x;
  trial_cost.goal_y = env.goal_y;

  for (int trial = 0; trial < starts; ++trial) {
    Rng trial_rng = substream(seed, static_cast<std::uint64_t>(trial));
    State x0;
    bool placed = false;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double radius = env.start_region->radius * std::sqrt(uniform01(trial_rng));
      const double angle = 2.0 * std::numbers::pi * uniform01(trial_rng);
      const double sx = env.start_region->cx + radius * std::cos(angle);
      const double sy = env.start_region->cy + radius * std::sin(angle);
      const double heading = 2.0 * std::numbers::pi * uniform01(trial_rng);
      x0 = State{sx, sy, wrap_angle(heading)};
      if (!collision(x0, env, 0.0)) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::runtime_error("cluttered suite: no collision-free start found");
    }
    const std::uint64_t run_seed =
        splitmix64(seed ^ (0xA24BAED4963EE407ull *
                           static_cast<std::uint64_t>(trial + 1)));
    RunRecord run = run_controller(model, env, sampler, x0, trial_cost, run_seed);
    if (run.outcome == RunOutcome::success) ++result.successes;
    result.runs.push_back(std::move(run));
  }
  result.success_rate =
      static_cast<double>(result.successes) / static_cast<double>(result.trials);
  return result;
}

}  // namespace cuniform
