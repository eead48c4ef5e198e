#include <doctest.h>

#include "cuniform/config.hpp"
#include "cuniform/errors.hpp"
#include "cuniform/levelsets.hpp"

using namespace cuniform;

namespace {

LevelChain walker_chain(int horizon) {
  WalkerModel walker;
  const GridSpec grid = default_walker_grid();
  const auto actions = uniform_actions({-1.0, 1.0}, 3);
  Rng rng = make_rng(1);
  return build_all_levels(walker, grid, State{0.0}, actions, horizon, 1, 1.0,
                          rng);
}

}  // namespace

TEST_CASE("walker first expansion: three cells, three edges") {
  WalkerModel walker;
  const GridSpec grid = default_walker_grid();
  const auto actions = uniform_actions({-1.0, 1.0}, 3);
  const LevelSet l0 = LevelSet::from_cells(0, {grid.cell_of(State{0.0})});
  Rng rng = make_rng(1);
  const LevelExpansion exp = expand_level(walker, grid, l0, actions, 1, 1.0, rng);
  CHECK(exp.level.size() == 3);
  CHECK(exp.edges.size() == 3);
  CHECK(exp.dropped_out_of_bounds == 0);
  for (const EdgeRecord& e : exp.edges) {
    CHECK(e.source == 0);
    CHECK(e.actions.size() == 1);
  }
}

TEST_CASE("walker levels grow as 2t+1 up to t=30") {
  const LevelChain chain = walker_chain(30);
  REQUIRE(chain.levels.size() == 31);
  for (int t = 0; t <= 30; ++t) {
    CHECK(chain.levels[t].size() == 2 * t + 1);
  }
}

TEST_CASE("midpoint completeness: every (cell, action) pair yields one edge") {
  const LevelChain chain = walker_chain(5);
  for (int t = 0; t < 5; ++t) {
    std::int64_t action_instances = 0;
    for (const EdgeRecord& e : chain.edges[t]) {
      action_instances += static_cast<std::int64_t>(e.actions.size());
    }
    CHECK(action_instances == chain.levels[t].size() * 3);
  }
}

TEST_CASE("edge soundness: the midpoint propagates into the recorded target") {
  WalkerModel walker;
  const GridSpec grid = default_walker_grid();
  const auto actions = uniform_actions({-1.0, 1.0}, 3);
  const LevelChain chain = walker_chain(8);
  for (int t = 0; t < 8; ++t) {
    for (const EdgeRecord& e : chain.edges[t]) {
      const State mid = grid.midpoint_of(chain.levels[t].cells[e.source]);
      for (std::int32_t a : e.actions) {
        const State next = walker.step(mid, actions[a], 1.0);
        CHECK(grid.cell_of(next) == chain.levels[t + 1].cells[e.target]);
      }
    }
  }
}

TEST_CASE("dubins default config: level sizes strictly increase through t=15") {
  DubinsModel dubins(2.0, {-1.5, 1.5});
  const GridSpec grid = default_dubins_grid();
  const auto actions = uniform_actions({-1.5, 1.5}, 21);
  Rng rng = make_rng(1);
  const LevelChain chain =
      build_all_levels(dubins, grid, State{0, 0, 0}, actions, 15, 1, 0.2, rng);
  REQUIRE(chain.levels.size() == 16);
  CHECK(chain.levels[0].size() == 1);
  for (int t = 0; t < 15; ++t) {
    CHECK(chain.levels[t + 1].size() > chain.levels[t].size());
  }
}

TEST_CASE("expansion is deterministic under a fixed seed") {
  DubinsModel dubins(2.0, {-1.5, 1.5});
  const GridSpec grid = default_dubins_grid();
  const auto actions = uniform_actions({-1.5, 1.5}, 21);
  for (int samples : {1, 3}) {
    Rng rng_a = make_rng(42);
    Rng rng_b = make_rng(42);
    const LevelChain a = build_all_levels(dubins, grid, State{0, 0, 0}, actions,
                                          4, samples, 0.2, rng_a);
    const LevelChain b = build_all_levels(dubins, grid, State{0, 0, 0}, actions,
                                          4, samples, 0.2, rng_b);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t t = 0; t < a.levels.size(); ++t) {
      CHECK(a.levels[t].cells == b.levels[t].cells);
    }
    for (std::size_t t = 0; t < a.edges.size(); ++t) {
      REQUIRE(a.edges[t].size() == b.edges[t].size());
      for (std::size_t e = 0; e < a.edges[t].size(); ++e) {
        CHECK(a.edges[t][e].source == b.edges[t][e].source);
        CHECK(a.edges[t][e].target == b.edges[t][e].target);
        CHECK(a.edges[t][e].actions == b.edges[t][e].actions);
      }
    }
  }
}

TEST_CASE("a level whose propagations all leave the grid is a dead level") {
  WalkerModel walker;
  // One cell wide: every +-1 step exits, only u=0 stays; drop it too by
  // shrinking dt-scaled motion out of range.
  const GridSpec grid{{{1.0, -0.5, 0.5, false}}};
  const auto actions = uniform_actions({-1.0, 1.0}, 2);  // {-1, +1}, no zero
  const LevelSet l0 = LevelSet::from_cells(0, {grid.cell_of(State{0.0})});
  Rng rng = make_rng(1);
  CHECK_THROWS_AS(expand_level(walker, grid, l0, actions, 1, 1.0, rng),
                  DeadLevelError);
}

TEST_CASE("out-of-bounds successors are counted, not clamped") {
  WalkerModel walker;
  const GridSpec grid{{{1.0, -1.5, 1.5, false}}};
  const auto actions = uniform_actions({-1.0, 1.0}, 3);
  LevelSet level = LevelSet::from_cells(0, {grid.cell_of(State{0.0})});
  Rng rng = make_rng(1);
  // t=0: all three targets in bounds. t=1: edge cells lose one action each.
  const LevelExpansion first = expand_level(walker, grid, level, actions, 1, 1.0, rng);
  CHECK(first.dropped_out_of_bounds == 0);
  const LevelExpansion second =
      expand_level(walker, grid, first.level, actions, 1, 1.0, rng);
  CHECK(second.dropped_out_of_bounds == 2);
  CHECK(second.level.size() == 3);
}
