#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cuniform/types.hpp"

namespace cuniform {

// Normalize an angle into [0, 2*pi).
double wrap_angle(double theta);

// One forward-Euler step of the 1-D walker, x' = x + u*dt with |u| <= 1.
double step_walker(double x, double u, double dt);

// One forward-Euler step of the fixed-speed Dubins car:
//   x' = x + v*cos(theta)*dt,  y' = y + v*sin(theta)*dt,
//   theta' = wrap(theta + omega*dt).
State step_dubins(const State& s, double omega, double dt, double speed);

struct Trajectory {
  std::vector<State> states;          // length T+1
  std::vector<ControlInput> controls; // length T
  double dt = 0.0;
};

// Deterministic discrete-time system model. Immutable after construction;
// step() is pure, so models are freely shareable across threads.
class SystemModel {
 public:
  virtual ~SystemModel() = default;

  virtual std::string_view name() const = 0;
  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual const std::vector<Interval>& control_bounds() const = 0;
  virtual State step(const State& x, const ControlInput& u, double dt) const = 0;

  bool admissible(const ControlInput& u) const;
  ControlInput clamp(const ControlInput& u) const;
};

class WalkerModel final : public SystemModel {
 public:
  WalkerModel();

  std::string_view name() const override { return "walker"; }
  int state_dim() const override { return 1; }
  int control_dim() const override { return 1; }
  const std::vector<Interval>& control_bounds() const override { return bounds_; }
  State step(const State& x, const ControlInput& u, double dt) const override;

 private:
  std::vector<Interval> bounds_;
};

class DubinsModel final : public SystemModel {
 public:
  DubinsModel(double speed, Interval omega_bounds);

  std::string_view name() const override { return "dubins"; }
  int state_dim() const override { return 3; }
  int control_dim() const override { return 1; }
  const std::vector<Interval>& control_bounds() const override { return bounds_; }
  State step(const State& x, const ControlInput& u, double dt) const override;

  double speed() const { return speed_; }

 private:
  double speed_;
  std::vector<Interval> bounds_;
};

// Model selection plus the scalar parameters that identify it; this is what
// gets persisted next to a policy so the file can rebuild its model.
struct ModelSpec {
  std::string kind = "dubins";      // "walker" | "dubins"
  double speed = 1.0;               // dubins linear speed [m/s]
  Interval control{-1.5, 1.5};      // admissible scalar control range

  bool operator==(const ModelSpec&) const = default;
};

std::unique_ptr<SystemModel> make_model(const ModelSpec& spec);

// `count` equally spaced scalar controls spanning `range` (count >= 2 hits
// both endpoints; count == 1 yields the midpoint).
std::vector<ControlInput> uniform_actions(Interval range, int count);

// Applies the model step recursively; throws with the offending control index
// if a step rejects its input.
Trajectory rollout(const SystemModel& model, const State& x0,
                   std::span<const ControlInput> controls, double dt);

}  // namespace cuniform
