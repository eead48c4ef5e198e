#include <doctest.h>

#include <cmath>

#include "cuniform/config.hpp"
#include "cuniform/controller.hpp"
#include "cuniform/errors.hpp"

using namespace cuniform;

namespace {

Environment empty_env(double goal_x, double goal_y, double time_limit = 20.0) {
  Environment env;
  env.goal_x = goal_x;
  env.goal_y = goal_y;
  env.time_limit = time_limit;
  return env;
}

Trajectory single_state(const State& s) {
  Trajectory traj;
  traj.dt = 0.2;
  traj.states.push_back(s);
  return traj;
}

PolicyTable short_dubins_policy() {
  return precompute(ModelSpec{"dubins", 2.0, {-1.5, 1.5}}, default_dubins_grid(),
                    State{0, 0, 0}, uniform_actions({-1.5, 1.5}, 21), 5, 0.2, 1,
                    1);
}

}  // namespace

TEST_CASE("trajectory cost: goal, squared distance, obstacle gating") {
  CostConfig cfg;
  cfg.goal_x = 1.0;
  cfg.goal_y = 0.0;
  const Environment env = empty_env(1.0, 0.0);

  CHECK(trajectory_cost(single_state(State{1.0, 0.0, 0.0}), env, cfg, 0.0) == 0.0);
  CHECK(trajectory_cost(single_state(State{3.0, 0.0, 0.0}), env, cfg, 0.0) == 4.0);

  Environment blocked = env;
  blocked.obstacles.push_back({Circle{1.0, 0.0, 0.5}, 1.0});
  // Obstacle not yet visible: plain quadratic cost.
  CHECK(trajectory_cost(single_state(State{1.0, 0.0, 0.0}), blocked, cfg, 0.5) == 0.0);
  // Visible: infinite regardless of goal proximity.
  CHECK(std::isinf(
      trajectory_cost(single_state(State{1.0, 0.0, 0.0}), blocked, cfg, 1.0)));
}

TEST_CASE("mppi weights: uniform, collision exclusion, one-gap identity") {
  const std::vector<double> equal = {3.0, 3.0, 3.0, 3.0};
  for (double w : mppi_weights(equal, 0.567)) {
    CHECK(w == doctest::Approx(0.25).epsilon(1e-15));
  }

  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> with_inf = {0.0, inf, inf};
  const auto weights = mppi_weights(with_inf, 0.567);
  CHECK(weights[0] == 1.0);
  CHECK(weights[1] == 0.0);
  CHECK(weights[2] == 0.0);

  for (double lambda : {0.1, 0.567, 2.0}) {
    const auto pair = mppi_weights(std::vector<double>{0.0, lambda}, lambda);
    CHECK(pair[0] == doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0))
                         .epsilon(1e-15));
    CHECK(pair[1] == doctest::Approx(1.0 / (std::exp(1.0) + 1.0)).epsilon(1e-15));
  }

  CHECK_THROWS_AS(mppi_weights(std::vector<double>{inf, inf}, 0.5),
                  AllCollidingError);
}

TEST_CASE("softmax weights are exactly shift invariant") {
  // Dyadic costs and shift: the additions are exact, so the shifted minimum
  // cancels bitwise.
  const std::vector<double> costs = {1.0, 5.5, 2.25, 1048576.0};
  std::vector<double> shifted = costs;
  for (double& c : shifted) c += 137.25;
  const auto a = mppi_weights(costs, 0.567);
  const auto b = mppi_weights(shifted, 0.567);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);  // bitwise: the shifted minimum cancels
  }
}

TEST_CASE("synthesize control: passthrough, symmetry, concentration") {
  DubinsModel model(2.0, {-1.5, 1.5});
  SampleBatch batch;
  batch.dt = 0.2;
  Trajectory a;
  a.controls = {{0.5}, {-0.25}, {1.0}};
  Trajectory b;
  b.controls = {{-0.5}, {0.25}, {-1.0}};
  batch.trajectories = {a, b};

  const auto passthrough =
      synthesize_control(batch, std::vector<double>{1.0, 0.0}, model);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(passthrough[t][0] == a.controls[t][0]);
  }

  const auto symmetric =
      synthesize_control(batch, std::vector<double>{0.5, 0.5}, model);
  for (const ControlInput& u : symmetric) CHECK(u[0] == 0.0);

  // Softmax at a tiny temperature concentrates on the cheapest sample.
  const auto weights = mppi_weights(std::vector<double>{0.0, 1.0}, 1e-6);
  const auto concentrated = synthesize_control(batch, weights, model);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(concentrated[t][0] == doctest::Approx(a.controls[t][0]).epsilon(1e-9));
  }
}

TEST_CASE("reanchor composes translation and rotation") {
  const State body{1.0, 0.0, 0.0};
  const State origin{0.0, 0.0, 0.0};
  const State pose{2.0, 3.0, std::numbers::pi / 2};
  const State world = reanchor(body, origin, pose);
  CHECK(world[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(world[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(world[2] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));

  const State same = reanchor(body, origin, origin);
  CHECK(same[0] == doctest::Approx(1.0));
  CHECK(same[1] == doctest::Approx(0.0));

  CHECK(reanchor(State{2.0}, State{0.0}, State{5.0})[0] == doctest::Approx(7.0));
}

TEST_CASE("empty environment: controller reaches a goal straight ahead") {
  const PolicyTable policy = short_dubins_policy();
  DubinsModel model(2.0, {-1.5, 1.5});
  const Environment env = empty_env(3.0, 0.0);
  CostConfig cfg;
  cfg.goal_x = 3.0;
  cfg.goal_y = 0.0;
  cfg.horizon_s = 1.0;
  cfg.dt = 0.2;
  SamplerSetup setup;
  setup.kind = SamplerKind::cuniform;
  setup.policy = &policy;
  setup.count = 500;
  const RunRecord run = run_controller(model, env, setup, State{0, 0, 0}, cfg, 7);
  CHECK(run.outcome == RunOutcome::success);
  // Straight-line distance is 3 m minus the goal tolerance; allow 10%.
  CHECK(run.path_length <= 3.0 * 1.10);
}

TEST_CASE("controller runs are deterministic under a fixed seed") {
  const PolicyTable policy = short_dubins_policy();
  DubinsModel model(2.0, {-1.5, 1.5});
  Environment env = empty_env(2.5, 1.0);
  env.obstacles.push_back({Circle{1.2, 0.3, 0.4}, 0.0});
  CostConfig cfg;
  cfg.goal_x = 2.5;
  cfg.goal_y = 1.0;
  cfg.horizon_s = 1.0;
  cfg.dt = 0.2;
  SamplerSetup setup;
  setup.kind = SamplerKind::cuniform;
  setup.policy = &policy;
  setup.count = 300;
  const RunRecord a = run_controller(model, env, setup, State{0, 0, 0}, cfg, 123);
  const RunRecord b = run_controller(model, env, setup, State{0, 0, 0}, cfg, 123);
  CHECK(run_record_json(a) == run_record_json(b));
  CHECK(a.executed.states == b.executed.states);
}

TEST_CASE("goal distance decreases cycle over cycle in an empty environment") {
  const PolicyTable policy = short_dubins_policy();
  DubinsModel model(2.0, {-1.5, 1.5});
  const Environment env = empty_env(3.0, 0.5);
  CostConfig cfg;
  cfg.goal_x = 3.0;
  cfg.goal_y = 0.5;
  cfg.horizon_s = 1.0;
  cfg.dt = 0.2;
  SamplerSetup setup;
  setup.kind = SamplerKind::cuniform;
  setup.policy = &policy;
  setup.count = 500;
  int total_violations = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RunRecord run =
        run_controller(model, env, setup, State{0, 0, 0}, cfg, seed);
    REQUIRE(run.outcome == RunOutcome::success);
    int violations = 0;
    double previous = std::hypot(3.0, 0.5);
    for (double d : run.goal_distance) {
      if (d >= previous) ++violations;
      previous = d;
    }
    CHECK(violations <= 2);
    total_violations += violations;
  }
  CHECK(total_violations <= 20);
}

TEST_CASE("a policy shorter than the planning horizon still drives the loop") {
  // Candidates then carry fewer steps than the cost horizon; the warm-start
  // shift must pad instead of reading past the synthesized sequence.
  const PolicyTable policy =
      precompute(ModelSpec{"dubins", 2.0, {-1.5, 1.5}}, default_dubins_grid(),
                 State{0, 0, 0}, uniform_actions({-1.5, 1.5}, 21), 3, 0.2, 1, 1);
  DubinsModel model(2.0, {-1.5, 1.5});
  const Environment env = empty_env(2.5, 0.0);
  CostConfig cfg;
  cfg.goal_x = 2.5;
  cfg.horizon_s = 1.6;  // 8 steps > policy horizon 3
  cfg.dt = 0.2;
  SamplerSetup setup;
  setup.kind = SamplerKind::cuniform;
  setup.policy = &policy;
  setup.count = 200;
  const RunRecord run = run_controller(model, env, setup, State{0, 0, 0}, cfg, 21);
  CHECK(run.outcome == RunOutcome::success);
}

TEST_CASE("a start inside a visible obstacle is an immediate collision") {
  const PolicyTable policy = short_dubins_policy();
  DubinsModel model(2.0, {-1.5, 1.5});
  Environment env = empty_env(3.0, 0.0);
  env.obstacles.push_back({Circle{0.0, 0.0, 0.5}, 0.0});
  CostConfig cfg;
  cfg.goal_x = 3.0;
  cfg.horizon_s = 1.0;
  SamplerSetup setup;
  setup.kind = SamplerKind::cuniform;
  setup.policy = &policy;
  setup.count = 100;
  const RunRecord run = run_controller(model, env, setup, State{0, 0, 0}, cfg, 1);
  CHECK(run.outcome == RunOutcome::collision);
  CHECK(run.cycles == 0);
}
