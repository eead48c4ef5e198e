#include "cuniform/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cuniform {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod can land exactly on 2*pi after the add
  return w;
}

double step_walker(double x, double u, double dt) {
  if (!std::isfinite(x) || !std::isfinite(u) || !std::isfinite(dt)) {
    throw std::invalid_argument("step_walker: non-finite input");
  }
  if (std::abs(u) > 1.0) {
    throw std::invalid_argument("step_walker: |u| > 1 is inadmissible");
  }
  return x + u * dt;
}

State step_dubins(const State& s, double omega, double dt, double speed) {
  if (s.size() != 3) {
    throw std::invalid_argument("step_dubins: state must be (x, y, theta)");
  }
  if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || !std::isfinite(s[2]) ||
      !std::isfinite(omega) || !std::isfinite(dt) || !std::isfinite(speed)) {
    throw std::invalid_argument("step_dubins: non-finite input");
  }
  if (dt <= 0.0 || speed <= 0.0) {
    throw std::invalid_argument("step_dubins: dt and speed must be positive");
  }
  return State{s[0] + speed * std::cos(s[2]) * dt,
               s[1] + speed * std::sin(s[2]) * dt,
               wrap_angle(s[2] + omega * dt)};
}

bool SystemModel::admissible(const ControlInput& u) const {
  const auto& bounds = control_bounds();
  if (u.size() != static_cast<int>(bounds.size())) return false;
  for (int d = 0; d < u.size(); ++d) {
    if (!std::isfinite(u[d]) || !bounds[d].contains(u[d])) return false;
  }
  return true;
}

ControlInput SystemModel::clamp(const ControlInput& u) const {
  const auto& bounds = control_bounds();
  ControlInput out = u;
  for (int d = 0; d < u.size() && d < static_cast<int>(bounds.size()); ++d) {
    out[d] = bounds[d].clamp(u[d]);
  }
  return out;
}

WalkerModel::WalkerModel() : bounds_{{-1.0, 1.0}} {}

State WalkerModel::step(const State& x, const ControlInput& u, double dt) const {
  if (x.size() != 1 || u.size() != 1) {
    throw std::invalid_argument("walker: state and control are scalar");
  }
  return State{step_walker(x[0], u[0], dt)};
}

DubinsModel::DubinsModel(double speed, Interval omega_bounds)
    : speed_(speed), bounds_{omega_bounds} {
  if (!(speed > 0.0)) {
    throw std::invalid_argument("dubins: speed must be positive");
  }
  if (!(omega_bounds.lo <= omega_bounds.hi)) {
    throw std::invalid_argument("dubins: empty omega range");
  }
}

State DubinsModel::step(const State& x, const ControlInput& u, double dt) const {
  if (u.size() != 1) {
    throw std::invalid_argument("dubins: control is scalar omega");
  }
  if (!bounds_[0].contains(u[0])) {
    throw std::invalid_argument("dubins: omega outside admissible range");
  }
  return step_dubins(x, u[0], dt, speed_);
}

std::unique_ptr<SystemModel> make_model(const ModelSpec& spec) {
  if (spec.kind == "walker") {
    return std::make_unique<WalkerModel>();
  }
  if (spec.kind == "dubins") {
    return std::make_unique<DubinsModel>(spec.speed, spec.control);
  }
  throw std::invalid_argument("unknown model kind: " + spec.kind);
}

std::vector<ControlInput> uniform_actions(Interval range, int count) {
  if (count < 1) {
    throw std::invalid_argument("uniform_actions: count must be >= 1");
  }
  std::vector<ControlInput> actions;
  actions.reserve(count);
  if (count == 1) {
    actions.push_back(ControlInput{0.5 * (range.lo + range.hi)});
    return actions;
  }
  const double span = range.hi - range.lo;
  for (int i = 0; i < count; ++i) {
    actions.push_back(ControlInput{range.lo + span * i / (count - 1)});
  }
  return actions;
}

Trajectory rollout(const SystemModel& model, const State& x0,
                   std::span<const ControlInput> controls, double dt) {
  Trajectory traj;
  traj.dt = dt;
  traj.states.reserve(controls.size() + 1);
  traj.controls.assign(controls.begin(), controls.end());
  traj.states.push_back(x0);
  for (std::size_t t = 0; t < controls.size(); ++t) {
    try {
      traj.states.push_back(model.step(traj.states.back(), controls[t], dt));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("rollout: step " + std::to_string(t) + ": " +
                                  e.what());
    }
  }
  return traj;
}

}  // namespace cuniform
