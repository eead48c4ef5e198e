#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cuniform/dynamics.hpp"
#include "cuniform/grid.hpp"

namespace cuniform {

// Reachable cells at one time step. Cells are kept in ascending index order
// so that everything derived from a level (edges, flow networks, policies,
// serialized files) is independent of discovery order.
struct LevelSet {
  int t = 0;
  std::vector<CellIndex> cells;  // sorted ascending

  // -1 when the cell is not part of the level.
  std::int32_t position_of(const CellIndex& c) const {
    auto it = position_.find(c);
    return it == position_.end() ? -1 : it->second;
  }

  bool contains(const CellIndex& c) const { return position_.count(c) > 0; }
  std::int64_t size() const { return static_cast<std::int64_t>(cells.size()); }

  static LevelSet from_cells(int t, std::vector<CellIndex> cells);

 private:
  std::unordered_map<CellIndex, std::int32_t, CellIndexHash> position_;
};

// One (source cell, target cell) transition between consecutive levels,
// carrying every action observed to make that move. Positions index into the
// sorted cell arrays of the two levels.
struct EdgeRecord {
  std::int32_t source = 0;
  std::int32_t target = 0;
  std::vector<std::int32_t> actions;  // ascending indices into the action list
};

struct LevelExpansion {
  LevelSet level;                 // L_{t+1}
  std::vector<EdgeRecord> edges;  // sorted by (source, target)
  std::int64_t dropped_out_of_bounds = 0;
};

// Propagates every cell of `current` under every action. samples_per_cell == 1
// propagates cell midpoints (fully deterministic); larger counts draw that
// many uniform states per cell from `rng`. Successors leaving the grid are
// dropped and counted. Throws DeadLevelError when nothing survives.
LevelExpansion expand_level(const SystemModel& model, const GridSpec& grid,
                            const LevelSet& current,
                            std::span<const ControlInput> actions,
                            int samples_per_cell, double dt, Rng& rng);

struct LevelChain {
  std::vector<LevelSet> levels;                // size N+1
  std::vector<std::vector<EdgeRecord>> edges;  // size N
  std::vector<std::int64_t> dropped;           // size N
};

// L_0 = {cell of x0}; expands N times.
LevelChain build_all_levels(const SystemModel& model, const GridSpec& grid,
                            const State& x0,
                            std::span<const ControlInput> actions, int horizon,
                            int samples_per_cell, double dt, Rng& rng);

}  // namespace cuniform
