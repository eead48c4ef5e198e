#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cuniform/dynamics.hpp"
#include "cuniform/policy.hpp"
#include "cuniform/sampler.hpp"
#include "cuniform/simworld.hpp"

namespace cuniform {

struct CostConfig {
  double goal_x = 0.0;
  double goal_y = 0.0;
  double lambda = 0.567;       // softmax temperature
  double horizon_s = 3.0;      // planning horizon T [s]
  double dt = 0.2;
  double goal_tolerance = 0.5; // [m]

  // T/dt, validated to be an exact integer.
  int steps() const;
};

// Sum over all trajectory states of squared position distance to the goal,
// +inf as soon as any state sits in an obstacle visible at `clock`.
double trajectory_cost(const Trajectory& traj, const Environment& env,
                       const CostConfig& cfg, double clock);

// Softmax weights exp(-(S_i - S_min)/lambda), normalized; +inf costs get
// weight exactly 0. Throws AllCollidingError when no cost is finite.
std::vector<double> mppi_weights(std::span<const double> costs, double lambda);

// Per-step weighted average of the batch's control sequences, clamped to the
// model's admissible box.
std::vector<ControlInput> synthesize_control(const SampleBatch& batch,
                                             std::span<const double> weights,
                                             const SystemModel& model);

// Rigid motion taking the pose `from` to the pose `to`, applied to a state:
// used to re-anchor body-frame policy samples at the vehicle's current pose.
// 3-D states transform under SE(2); 1-D states translate.
State reanchor(const State& s, const State& from, const State& to);

enum class RunOutcome { success, collision, timeout };

std::string_view to_string(RunOutcome outcome);

struct SamplerSetup {
  SamplerKind kind = SamplerKind::cuniform;
  const PolicyTable* policy = nullptr;  // required for cuniform
  double sigma_u = 0.3;                 // noise variance
  double sigma_ln = 0.5;
  int count = 500;                      // trajectories per cycle
};

struct RunRecord {
  RunOutcome outcome = RunOutcome::timeout;
  double path_length = 0.0;
  int cycles = 0;
  std::uint64_t seed = 0;
  Trajectory executed;
  int all_colliding_cycles = 0;
  std::int64_t drift_fallbacks = 0;
  std::vector<double> goal_distance;  // after each cycle
};

// Receding-horizon loop: sample K candidates from the current state, cost
// them against the obstacles visible now, softmax-weight, apply the first
// synthesized control for dt, repeat. Ends on goal tolerance, on the executed
// state entering a visible obstacle, or at the environment time limit. A
// cycle where every sample collides holds zero control; five in a row give up
// (counted as a collision outcome, since the fixed-speed vehicle cannot stop).
RunRecord run_controller(const SystemModel& model, const Environment& env,
                         const SamplerSetup& sampler, const State& x0,
                         const CostConfig& cfg, std::uint64_t seed);

std::string run_record_json(const RunRecord& record);

}  // namespace cuniform
