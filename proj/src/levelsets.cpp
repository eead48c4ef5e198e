#include "cuniform/levelsets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "cuniform/errors.hpp"

namespace cuniform {

LevelSet LevelSet::from_cells(int t, std::vector<CellIndex> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  LevelSet level;
  level.t = t;
  level.cells = std::move(cells);
  level.position_.reserve(level.cells.size());
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(level.cells.size()); ++i) {
    level.position_.emplace(level.cells[i], i);
  }
  return level;
}

LevelExpansion expand_level(const SystemModel& model, const GridSpec& grid,
                            const LevelSet& current,
                            std::span<const ControlInput> actions,
                            int samples_per_cell, double dt, Rng& rng) {
  if (current.cells.empty()) {
    throw std::invalid_argument("expand_level: empty source level");
  }
  if (actions.empty()) {
    throw std::invalid_argument("expand_level: empty action set");
  }
  if (samples_per_cell < 1) {
    throw std::invalid_argument("expand_level: samples_per_cell must be >= 1");
  }

  // (source position, target cell) -> action set, accumulated sparsely.
  struct PairKey {
    std::int32_t source;
    CellIndex target;
    bool operator==(const PairKey&) const = default;
  };
  struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
      return CellIndexHash{}(k.target) * 1000003u ^
             static_cast<std::size_t>(k.source);
    }
  };
  std::unordered_map<PairKey, std::vector<std::int32_t>, PairKeyHash> transitions;
  std::int64_t dropped = 0;

  for (std::int32_t src = 0; src < static_cast<std::int32_t>(current.cells.size()); ++src) {
    const auto points =
        grid.sample_in_cell(current.cells[src], samples_per_cell, rng);
    for (const State& point : points) {
      for (std::int32_t a = 0; a < static_cast<std::int32_t>(actions.size()); ++a) {
        const State next = model.step(point, actions[a], dt);
        CellIndex target;
        if (!grid.try_cell_of(next, target)) {
          ++dropped;
          continue;
        }
        auto& acts = transitions[PairKey{src, target}];
        if (std::find(acts.begin(), acts.end(), a) == acts.end()) {
          acts.push_back(a);
        }
      }
    }
  }

  if (transitions.empty()) {
    throw DeadLevelError(current.t,
                         "expand_level: all propagations out of bounds at t=" +
                             std::to_string(current.t));
  }

  std::vector<CellIndex> next_cells;
  next_cells.reserve(transitions.size());
  for (const auto& [key, acts] : transitions) next_cells.push_back(key.target);

  LevelExpansion out;
  out.level = LevelSet::from_cells(current.t + 1, std::move(next_cells));
  out.dropped_out_of_bounds = dropped;
  out.edges.reserve(transitions.size());
  for (auto& [key, acts] : transitions) {
    EdgeRecord edge;
    edge.source = key.source;
    edge.target = out.level.position_of(key.target);
    std::sort(acts.begin(), acts.end());
    edge.actions = std::move(acts);
    out.edges.push_back(std::move(edge));
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const EdgeRecord& a, const EdgeRecord& b) {
              return std::pair(a.source, a.target) < std::pair(b.source, b.target);
            });
  return out;
}

LevelChain build_all_levels(const SystemModel& model, const GridSpec& grid,
                            const State& x0,
                            std::span<const ControlInput> actions, int horizon,
                            int samples_per_cell, double dt, Rng& rng) {
  if (horizon < 1) {
    throw std::invalid_argument("build_all_levels: horizon must be >= 1");
  }
  LevelChain chain;
  chain.levels.reserve(horizon + 1);
  chain.edges.reserve(horizon);
  chain.dropped.reserve(horizon);
  chain.levels.push_back(LevelSet::from_cells(0, {grid.cell_of(x0)}));
  for (int t = 0; t < horizon; ++t) {
    LevelExpansion exp = expand_level(model, grid, chain.levels.back(), actions,
                                      samples_per_cell, dt, rng);
    chain.levels.push_back(std::move(exp.level));
    chain.edges.push_back(std::move(exp.edges));
    chain.dropped.push_back(exp.dropped_out_of_bounds);
  }
  return chain;
}

}  // namespace cuniform
