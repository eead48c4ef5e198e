#include "cuniform/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cuniform/errors.hpp"
#include "cuniform/rng.hpp"

namespace cuniform {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxAllCollidingCycles = 5;
}

int CostConfig::steps() const {
  const double ratio = horizon_s / dt;
  const double rounded = std::round(ratio);
  if (!(dt > 0.0) || std::abs(ratio - rounded) > 1e-9 || rounded < 1.0) {
    throw std::invalid_argument("CostConfig: horizon must be a multiple of dt");
  }
  return static_cast<int>(rounded);
}

double trajectory_cost(const Trajectory& traj, const Environment& env,
                       const CostConfig& cfg, double clock) {
  double cost = 0.0;
  for (const State& s : traj.states) {
    if (collision(s, env, clock)) return kInf;
    const double dx = s[0] - cfg.goal_x;
    const double dy = (s.size() > 1 ? s[1] : 0.0) - cfg.goal_y;
    cost += dx * dx + dy * dy;
  }
  return cost;
}

std::vector<double> mppi_weights(std::span<const double> costs, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("mppi_weights: lambda must be positive");
  }
  double min_cost = kInf;
  for (double c : costs) min_cost = std::min(min_cost, c);
  if (!std::isfinite(min_cost)) {
    throw AllCollidingError("mppi_weights: every sample has infinite cost");
  }
  std::vector<double> weights(costs.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (std::isfinite(costs[i])) {
      weights[i] = std::exp(-(costs[i] - min_cost) / lambda);
      total += weights[i];
    }
  }
  for (double& w : weights) w /= total;
  return weights;
}

std::vector<ControlInput> synthesize_control(const SampleBatch& batch,
                                             std::span<const double> weights,
                                             const SystemModel& model) {
  if (batch.trajectories.size() != weights.size() || batch.trajectories.empty()) {
    throw std::invalid_argument("synthesize_control: batch/weight mismatch");
  }
  const std::size_t steps = batch.trajectories.front().controls.size();
  const int cdim = model.control_dim();
  std::vector<ControlInput> sequence(steps, ControlInput::zeros(cdim));
  for (std::size_t k = 0; k < batch.trajectories.size(); ++k) {
    if (weights[k] == 0.0) continue;
    const auto& controls = batch.trajectories[k].controls;
    for (std::size_t t = 0; t < steps; ++t) {
      for (int d = 0; d < cdim; ++d) {
        sequence[t][d] += weights[k] * controls[t][d];
      }
    }
  }
  for (ControlInput& u : sequence) u = model.clamp(u);
  return sequence;
}

State reanchor(const State& s, const State& from, const State& to) {
  if (s.size() == 1) {
    return State{to[0] + (s[0] - from[0])};
  }
  if (s.size() == 3) {
    const double c0 = std::cos(from[2]);
    const double s0 = std::sin(from[2]);
    const double rx = c0 * (s[0] - from[0]) + s0 * (s[1] - from[1]);
    const double ry = -s0 * (s[0] - from[0]) + c0 * (s[1] - from[1]);
    const double rth = s[2] - from[2];
    const double c1 = std::cos(to[2]);
    const double s1 = std::sin(to[2]);
    return State{to[0] + c1 * rx - s1 * ry, to[1] + s1 * rx + c1 * ry,
                 wrap_angle(to[2] + rth)};
  }
  throw std::invalid_argument("reanchor: unsupported state dimension");
}

std::string_view to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::success: return "success";
    case RunOutcome::collision: return "collision";
    case RunOutcome::timeout: return "timeout";
  }
  return "?";
}

namespace {

double goal_distance(const State& s, const CostConfig& cfg) {
  const double dx = s[0] - cfg.goal_x;
  const double dy = (s.size() > 1 ? s[1] : 0.0) - cfg.goal_y;
  return std::hypot(dx, dy);
}

SampleBatch sample_candidates(const SystemModel& model,
                              const SamplerSetup& sampler, const State& state,
                              std::span<const ControlInput> nominal, int steps,
                              double dt, std::uint64_t cycle_seed) {
  switch (sampler.kind) {
    case SamplerKind::cuniform: {
      if (sampler.policy == nullptr) {
        throw std::invalid_argument("run_controller: cuniform needs a policy");
      }
      // The policy is precomputed from a canonical origin; the dynamics have
      // no absolute position/heading dependence, so samples transfer to the
      // current pose by a rigid motion.
      const State origin =
          sampler.policy->grid.midpoint_of(sampler.policy->levels.front().cells.front());
      SampleBatch batch = sample_cuniform(*sampler.policy, origin,
                                          std::min(steps, sampler.policy->horizon),
                                          sampler.count, cycle_seed);
      for (Trajectory& traj : batch.trajectories) {
        for (State& s : traj.states) s = reanchor(s, origin, state);
      }
      return batch;
    }
    case SamplerKind::gaussian:
      return sample_gaussian(model, state, nominal, sampler.sigma_u, steps,
                             sampler.count, dt, cycle_seed);
    case SamplerKind::lognormal:
      return sample_lognormal(model, state, nominal, sampler.sigma_u,
                              sampler.sigma_ln, steps, sampler.count, dt,
                              cycle_seed);
  }
  throw std::logic_error("run_controller: unhandled sampler kind");
}

}  // namespace

RunRecord run_controller(const SystemModel& model, const Environment& env,
                         const SamplerSetup& sampler, const State& x0,
                         const CostConfig& cfg, std::uint64_t seed) {
  const int steps = cfg.steps();
  RunRecord record;
  record.seed = seed;
  record.executed.dt = cfg.dt;
  record.executed.states.push_back(x0);

  State state = x0;
  double clock = 0.0;
  if (collision(state, env, clock)) {
    record.outcome = RunOutcome::collision;
    return record;
  }
  if (goal_distance(state, cfg) <= cfg.goal_tolerance) {
    record.outcome = RunOutcome::success;
    return record;
  }

  std::vector<ControlInput> nominal(steps, ControlInput::zeros(model.control_dim()));
  int consecutive_all_colliding = 0;
  record.outcome = RunOutcome::timeout;

  while (clock < env.time_limit - 1e-9) {
    const std::uint64_t cycle_seed =
        splitmix64(seed ^ (0xC2B2AE3D27D4EB4Full *
                           static_cast<std::uint64_t>(record.cycles + 1)));
    SampleBatch batch =
        sample_candidates(model, sampler, state, nominal, steps, cfg.dt, cycle_seed);
    record.drift_fallbacks += batch.drift_fallbacks;

    std::vector<double> costs;
    costs.reserve(batch.trajectories.size());
    for (const Trajectory& traj : batch.trajectories) {
      costs.push_back(trajectory_cost(traj, env, cfg, clock));
    }

    ControlInput applied = model.clamp(ControlInput::zeros(model.control_dim()));
    const bool any_finite =
        std::any_of(costs.begin(), costs.end(),
                    [](double c) { return std::isfinite(c); });
    if (any_finite) {
      consecutive_all_colliding = 0;
      const std::vector<double> weights = mppi_weights(costs, cfg.lambda);
      std::vector<ControlInput> sequence =
          synthesize_control(batch, weights, model);
      applied = sequence.front();
      // Warm start for the next cycle: shift one step, repeat the last. The
      // synthesized sequence can be shorter than the planning horizon when
      // the policy was precomputed for fewer steps.
      for (std::size_t t = 0; t < nominal.size(); ++t) {
        nominal[t] = t + 1 < sequence.size() ? sequence[t + 1] : sequence.back();
      }
    } else {
      ++record.all_colliding_cycles;
      ++consecutive_all_colliding;
      std::fill(nominal.begin(), nominal.end(),
                ControlInput::zeros(model.control_dim()));
      if (consecutive_all_colliding > kMaxAllCollidingCycles) {
        record.outcome = RunOutcome::collision;
        break;
      }
    }

    const State next = model.step(state, applied, cfg.dt);
    record.path_length +=
        std::hypot(next[0] - state[0],
                   (next.size() > 1 ? next[1] : 0.0) -
                       (state.size() > 1 ? state[1] : 0.0));
    state = next;
    clock += cfg.dt;
    ++record.cycles;
    record.executed.controls.push_back(applied);
    record.executed.states.push_back(state);
    record.goal_distance.push_back(goal_distance(state, cfg));

    if (collision(state, env, clock)) {
      record.outcome = RunOutcome::collision;
      break;
    }
    if (goal_distance(state, cfg) <= cfg.goal_tolerance) {
      record.outcome = RunOutcome::success;
      break;
    }
  }
  return record;
}

std::string run_record_json(const RunRecord& record) {
  nlohmann::json doc;
  doc["outcome"] = std::string(to_string(record.outcome));
  doc["path_length_m"] = record.path_length;
  doc["cycles"] = record.cycles;
  doc["seed"] = record.seed;
  doc["all_colliding_cycles"] = record.all_colliding_cycles;
  doc["drift_fallbacks"] = record.drift_fallbacks;
  auto& states = doc["executed"] = nlohmann::json::array();
  for (const State& s : record.executed.states) {
    nlohmann::json js = nlohmann::json::array();
    for (int d = 0; d < s.size(); ++d) js.push_back(s[d]);
    states.push_back(std::move(js));
  }
  return doc.dump(2);
}

}  // namespace cuniform
