#pragma once

#include <cstdint>
#include <vector>

#include "cuniform/rng.hpp"
#include "cuniform/types.hpp"

namespace cuniform {

struct GridDim {
  double cell_size = 1.0;  // delta, same units as the dimension
  double lower = 0.0;
  double upper = 0.0;
  bool angular = false;    // wrap-around dimension; (upper - lower) == 2*pi

  bool operator==(const GridDim&) const = default;
};

// Integer cell coordinate tuple. Unused slots stay zero so the defaulted
// comparison and the hash cover the whole array.
struct CellIndex {
  std::array<std::int32_t, kMaxDims> idx{};
  std::int32_t dim = 0;

  std::int32_t operator[](int d) const { return idx[d]; }
  std::int32_t& operator[](int d) { return idx[d]; }

  bool operator==(const CellIndex&) const = default;
  auto operator<=>(const CellIndex&) const = default;
};

struct CellIndexHash {
  std::size_t operator()(const CellIndex& c) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (int d = 0; d < c.dim; ++d) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.idx[d])) +
           0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Axis-aligned tiling of a bounded configuration space into half-open cells
// [lo + i*delta, lo + (i+1)*delta) of equal measure. Cells are addressed by
// index only; nothing is ever allocated per cell, so memory tracks the set of
// *visited* cells, not the bound volume.
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<GridDim> dims);

  int dim() const { return static_cast<int>(dims_.size()); }
  const GridDim& dim_info(int d) const { return dims_[d]; }
  const std::vector<GridDim>& dims() const { return dims_; }
  std::int64_t cell_count(int d) const { return counts_[d]; }

  // Measure of one cell, prod of cell sizes.
  double cell_measure() const;

  // Maps an in-bounds state to the unique cell containing it. Angular
  // coordinates are wrapped first; a non-angular coordinate outside
  // [lower, upper) throws OutOfDomainError.
  CellIndex cell_of(const State& s) const;

  // Non-throwing variant for hot paths; returns false when out of domain.
  bool try_cell_of(const State& s, CellIndex& out) const;

  // Center of a cell; inverse of cell_of on cell centers. Angular
  // coordinates are normalized to [0, 2*pi).
  State midpoint_of(const CellIndex& c) const;

  bool valid(const CellIndex& c) const;

  // n states uniform in the cell box; n == 1 degenerates to the midpoint
  // (the deterministic mode level expansion runs in).
  std::vector<State> sample_in_cell(const CellIndex& c, int n, Rng& rng) const;

  bool operator==(const GridSpec&) const = default;

 private:
  std::vector<GridDim> dims_;
  std::vector<std::int64_t> counts_;
};

}  // namespace cuniform
