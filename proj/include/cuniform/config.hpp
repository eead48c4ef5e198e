#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuniform/controller.hpp"
#include "cuniform/dynamics.hpp"
#include "cuniform/grid.hpp"
#include "cuniform/sampler.hpp"

namespace cuniform {

// Whole-experiment configuration: one JSON document whose defaults carry the
// benchmark constants (T = 3 s, dt = 0.2 s, lambda = 0.567, variance labels
// low/medium/high = 0.03/0.1/0.3).
struct ExperimentConfig {
  std::uint64_t seed = 1;

  ModelSpec model;
  int action_count = 21;
  GridSpec grid;  // defaulted from the model kind when the file omits it

  double horizon_s = 3.0;  // T
  double dt = 0.2;

  SamplerKind sampler_kind = SamplerKind::cuniform;
  double sigma_u = 0.3;
  double sigma_ln = 0.5;
  int sample_count = 500;  // K
  int samples_per_cell = 1;

  double lambda = 0.567;
  double goal_tolerance = 0.5;

  std::vector<int> coverage_counts = {250, 500, 1000, 2500, 5000, 10000};
  int coverage_steps = 10;
  int coverage_seeds = 5;

  std::string environment_path;

  int horizon_steps() const;                 // N = T/dt, exact
  std::vector<ControlInput> actions() const; // uniform over the control range
  State origin() const;                      // canonical precompute origin
  CostConfig cost_config() const;
};

// Origin-centered default grids: cell centers land on the origin so that the
// precompute anchor is an exact cell midpoint.
GridSpec default_walker_grid();
GridSpec default_dubins_grid();

ExperimentConfig load_config(const std::string& path);  // throws ConfigError
std::string config_json(const ExperimentConfig& config);
void save_config(const ExperimentConfig& config, const std::string& path);

}  // namespace cuniform
