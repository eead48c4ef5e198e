#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cuniform/grid.hpp"
#include "cuniform/levelsets.hpp"
#include "cuniform/sampler.hpp"

namespace cuniform {

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
};

struct RectObstacle {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

struct Obstacle {
  std::variant<Circle, RectObstacle> shape;
  double appearance_time = 0.0;  // seconds; 0 = always visible
};

struct StartRegion {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
};

struct Environment {
  std::vector<Obstacle> obstacles;
  double goal_x = 0.0;
  double goal_y = 0.0;
  double bounds_min_x = -100.0;
  double bounds_min_y = -100.0;
  double bounds_max_x = 100.0;
  double bounds_max_y = 100.0;
  double time_limit = 60.0;  // seconds of simulated time
  std::optional<StartRegion> start_region;
};

// True iff the state's position lies inside an obstacle that has appeared by
// `clock`. Circles include their boundary; rectangles are half-open boxes.
bool collision(const State& s, const Environment& env, double clock);

Environment load_environment(const std::string& path);
void save_environment(const Environment& env, const std::string& path);

struct CoverageReport {
  SamplerKind kind = SamplerKind::cuniform;
  int trajectory_count = 0;
  std::int64_t covered = 0;          // distinct (t, cell) pairs within L_t
  std::int64_t total_reachable = 0;  // sum of |L_t| over the batch horizon
  double percent = 0.0;
  std::vector<std::int64_t> per_level;
  std::int64_t covered_union = 0;    // time-agnostic distinct cells, reference
  std::int64_t off_level_states = 0; // states whose cell was not in L_t
};

// Counts the distinct (step, cell) pairs the batch visits, restricted to the
// reachable level cells; the percentage is over all reachable pairs up to the
// batch horizon.
CoverageReport coverage(const SampleBatch& batch, const GridSpec& grid,
                        std::span<const LevelSet> levels);

}  // namespace cuniform
