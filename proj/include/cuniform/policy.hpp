#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cuniform/dynamics.hpp"
#include "cuniform/flow.hpp"
#include "cuniform/grid.hpp"
#include "cuniform/levelsets.hpp"

namespace cuniform {

// Analytic action probabilities for the 1-D walker transition between a level
// of n cells and one of m = n + 2k cells under 2k+1 unit-spaced actions.
// Row i (0-based) assigns numerators [n-i, 1, ..., 1, i+1] over denominator m.
struct ClosedForm1D {
  int n = 0;
  int k = 0;
  std::int64_t denominator = 0;                       // m = n + 2k
  std::vector<std::vector<std::int64_t>> numerators;  // n rows x (2k+1) columns
};

ClosedForm1D closed_form_1d(int n, int k);

// One action's share of a cell's outgoing probability, kept as an exact
// reduced rational (flows are integral, so every probability is rational).
struct ActionProb {
  std::int32_t action = 0;
  std::int64_t num = 0;
  std::int64_t den = 1;
  double p = 0.0;
};

struct ActionDistribution {
  std::vector<ActionProb> entries;  // ascending action ids, nonzero entries

  double prob_of(std::int32_t action) const;
};

// Layered network for one level transition: source -> n layer-1 cells
// (capacity m each) -> inner arcs, one per EdgeRecord (capacity m) ->
// m layer-2 cells -> sink (capacity n each). A max flow of n*m certifies that
// a transition keeping the next level uniformly covered exists.
struct FlowNetwork {
  int n = 0;  // |L|
  int m = 0;  // |L'|
  FlowGraph graph{2};
  int source = 0;
  int sink = 0;
  std::vector<int> source_arc;                          // per layer-1 position
  std::vector<int> sink_arc;                            // per layer-2 position
  std::vector<int> inner_arc;                           // per EdgeRecord
  std::vector<std::pair<std::int32_t, std::int32_t>> arc_ends;  // per EdgeRecord
  std::vector<std::vector<int>> arcs_of_source;         // EdgeRecord positions
  std::vector<std::int32_t> isolated_targets;           // no incoming arc

  std::int64_t target_value() const {
    return static_cast<std::int64_t>(n) * static_cast<std::int64_t>(m);
  }
};

FlowNetwork build_flow_network(const LevelSet& level, const LevelSet& next,
                               std::span<const EdgeRecord> edges);

struct MaxFlowSolution {
  std::int64_t value = 0;
  std::vector<std::int64_t> inner_flow;  // parallel to the EdgeRecord span
};

// Exact integral max flow. With `balanced_seed` (the default) the solver
// first routes one unit through every inner arc and tops sources up against
// remaining sink demand before augmenting; the warm start fixes which of the
// many optimal flows is returned, making extraction reproducible and equal to
// the closed form on 1-D walker transitions.
MaxFlowSolution solve_uniform_flow(FlowNetwork& net, bool balanced_seed = true);

struct LevelPolicy {
  std::vector<ActionDistribution> cells;  // parallel to level.cells
  std::int64_t flow_value = 0;
  std::int64_t flow_target = 0;
  double deficit = 0.0;                   // 1 - value/target
  std::vector<std::int32_t> fallback_cells;  // zero outflow, uniform fallback
};

// Turns per-arc flows into per-cell action distributions: an arc's share is
// flow/outflow, split equally among the actions recorded on it. Cells with no
// outgoing flow fall back to uniform over their available actions (over the
// whole action list if they have no arcs at all) and are reported.
LevelPolicy extract_policy(const FlowNetwork& net, const MaxFlowSolution& sol,
                           std::span<const EdgeRecord> edges, int action_count);

struct LevelStats {
  std::int64_t cells = 0;
  std::int64_t edges = 0;
  std::int64_t flow_value = 0;
  std::int64_t flow_target = 0;
  double deficit = 0.0;
  double solve_ms = 0.0;
  std::int64_t dropped_out_of_bounds = 0;
};

// Precomputed per-level action distributions plus everything needed to
// reproduce them. Immutable once built; safe to share across threads.
struct PolicyTable {
  ModelSpec model;
  GridSpec grid;
  double dt = 0.0;
  std::vector<ControlInput> actions;
  int horizon = 0;  // N
  std::uint64_t seed = 0;
  int samples_per_cell = 1;

  std::vector<LevelSet> levels;      // size N+1
  std::vector<LevelPolicy> policies; // size N
  std::vector<LevelStats> stats;     // size N

  // nullptr when the cell is not in level t or t is out of range.
  const ActionDistribution* distribution(int t, const CellIndex& cell) const;

  // Hash of (model, grid, actions, dt); files with a different hash are
  // incompatible with the configuration that tries to load them.
  std::uint64_t compat_hash() const;
};

PolicyTable precompute(const ModelSpec& model, const GridSpec& grid,
                       const State& x0, std::vector<ControlInput> actions,
                       int horizon, double dt, int samples_per_cell,
                       std::uint64_t seed);

}  // namespace cuniform
