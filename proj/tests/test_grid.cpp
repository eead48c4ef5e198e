#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cuniform/config.hpp"
#include "cuniform/errors.hpp"
#include "cuniform/grid.hpp"

using namespace cuniform;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("cell_of: symmetric 1-D grid centers zero") {
  const GridSpec grid{{{1.0, -30.5, 30.5, false}}};
  CHECK(grid.cell_count(0) == 61);
  CHECK(grid.cell_of(State{0.0})[0] == 30);
  CHECK(grid.cell_of(State{-30.5})[0] == 0);
  CHECK_THROWS_AS(grid.cell_of(State{30.5}), OutOfDomainError);
  CHECK_THROWS_AS(grid.cell_of(State{-31.0}), OutOfDomainError);
}

TEST_CASE("cell_of: planar pose grid with floor arithmetic") {
  const GridSpec grid{{{0.1, -10.0, 10.0, false},
                       {0.1, -10.0, 10.0, false},
                       {kTwoPi / 36.0, 0.0, kTwoPi, true}}};
  const CellIndex c = grid.cell_of(State{0.05, 0.05, 0.01});
  CHECK(c[0] == 100);
  CHECK(c[1] == 100);
  CHECK(c[2] == 0);
}

TEST_CASE("angular wrap: just below 2*pi lands in the last cell, 2*pi in cell 0") {
  const GridSpec grid{{{kTwoPi / 36.0, 0.0, kTwoPi, true}}};
  CHECK(grid.cell_of(State{kTwoPi - 1e-9})[0] == 35);
  CHECK(grid.cell_of(State{kTwoPi})[0] == 0);
  CHECK(grid.cell_of(State{0.0})[0] == 0);
  CHECK(grid.cell_of(State{-1e-9})[0] == 35);
}

TEST_CASE("midpoint_of inverts cell_of on cell centers") {
  const GridSpec grid{{{1.0, -30.5, 30.5, false}}};
  CHECK(grid.midpoint_of(grid.cell_of(State{0.0}))[0] == 0.0);

  const GridSpec unit{{{1.0, 0.0, 4.0, false}}};
  CHECK(unit.midpoint_of(CellIndex{{0}, 1})[0] == 0.5);

  const GridSpec angular{{{kTwoPi / 36.0, 0.0, kTwoPi, true}}};
  CHECK(angular.midpoint_of(CellIndex{{0}, 1})[0] ==
        doctest::Approx(std::numbers::pi / 36.0));

  CHECK_THROWS_AS(unit.midpoint_of(CellIndex{{7}, 1}), std::invalid_argument);
}

TEST_CASE("partition property: random states map to exactly one cell, round trips") {
  const GridSpec grid{{{0.1, -10.05, 10.05, false},
                       {0.1, -10.05, 10.05, false},
                       {kTwoPi / 36.0, -kTwoPi / 72.0, kTwoPi - kTwoPi / 72.0,
                        true}}};
  Rng rng = make_rng(3);
  for (int rep = 0; rep < 2000; ++rep) {
    const State s{-10.05 + 20.1 * uniform01(rng), -10.05 + 20.1 * uniform01(rng),
                  kTwoPi * uniform01(rng)};
    const CellIndex c = grid.cell_of(s);
    CHECK(grid.valid(c));
    // The midpoint is in the same cell: exact round trip.
    CHECK(grid.cell_of(grid.midpoint_of(c)) == c);
  }
}

TEST_CASE("cells have identical measure") {
  const GridSpec grid = default_dubins_grid();
  CHECK(grid.cell_measure() ==
        doctest::Approx(0.1 * 0.1 * (kTwoPi / 36.0)).epsilon(1e-12));
}

TEST_CASE("sample_in_cell: n=1 is the midpoint, samples stay inside") {
  const GridSpec grid = default_dubins_grid();
  const CellIndex c = grid.cell_of(State{1.23, -4.56, 2.0});
  Rng rng = make_rng(5);

  const auto single = grid.sample_in_cell(c, 1, rng);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == grid.midpoint_of(c));

  const auto many = grid.sample_in_cell(c, 500, rng);
  for (const State& s : many) {
    CHECK(grid.cell_of(s) == c);
  }
}

TEST_CASE("sample_in_cell: empirical mean within 3 sigma of the midpoint") {
  // Box-uniform per-dimension std is delta/sqrt(12); the mean of n draws has
  // standard error delta/sqrt(12 n).
  const GridSpec grid{{{1.0, 0.0, 4.0, false}}};
  const CellIndex c{{2}, 1};
  Rng rng = make_rng(17);
  const int n = 100000;
  const auto samples = grid.sample_in_cell(c, n, rng);
  double mean = 0.0;
  for (const State& s : samples) mean += s[0];
  mean /= n;
  const double standard_error = 1.0 / std::sqrt(12.0 * n);
  CHECK(std::abs(mean - 2.5) <= 3.0 * standard_error);
}

TEST_CASE("GridSpec validates its dimensions") {
  CHECK_THROWS_AS((GridSpec{{{0.0, 0.0, 1.0, false}}}), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{{{1.0, 2.0, 1.0, false}}}), std::invalid_argument);
  // Angular span must be a whole number of cells.
  CHECK_THROWS_AS((GridSpec{{{1.0, 0.0, kTwoPi, true}}}), std::invalid_argument);
}
