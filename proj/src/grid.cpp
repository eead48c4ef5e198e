#include "cuniform/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cuniform/errors.hpp"

namespace cuniform {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

GridSpec::GridSpec(std::vector<GridDim> dims) : dims_(std::move(dims)) {
  if (dims_.empty() || static_cast<int>(dims_.size()) > kMaxDims) {
    throw std::invalid_argument("GridSpec: dimension count must be 1.." +
                                std::to_string(kMaxDims));
  }
  counts_.reserve(dims_.size());
  for (const GridDim& d : dims_) {
    if (!(d.cell_size > 0.0)) {
      throw std::invalid_argument("GridSpec: cell size must be positive");
    }
    if (!(d.lower < d.upper)) {
      throw std::invalid_argument("GridSpec: lower bound must be below upper");
    }
    const double span = d.upper - d.lower;
    if (d.angular) {
      if (std::abs(span - kTwoPi) > 1e-9) {
        throw std::invalid_argument(
            "GridSpec: angular dimension must span exactly 2*pi");
      }
      const double ratio = span / d.cell_size;
      const double rounded = std::round(ratio);
      if (std::abs(ratio - rounded) > 1e-9 || rounded < 1.0) {
        throw std::invalid_argument(
            "GridSpec: angular span must be an integer multiple of the cell "
            "size");
      }
      counts_.push_back(static_cast<std::int64_t>(rounded));
    } else {
      counts_.push_back(
          static_cast<std::int64_t>(std::ceil(span / d.cell_size - 1e-9)));
    }
  }
}

double GridSpec::cell_measure() const {
  double m = 1.0;
  for (const GridDim& d : dims_) m *= d.cell_size;
  return m;
}

bool GridSpec::try_cell_of(const State& s, CellIndex& out) const {
  if (s.size() != dim()) return false;
  out = CellIndex{};
  out.dim = dim();
  for (int d = 0; d < dim(); ++d) {
    const GridDim& g = dims_[d];
    const std::int64_t count = counts_[d];
    if (g.angular) {
      double w = std::fmod(s[d] - g.lower, kTwoPi);
      if (w < 0.0) w += kTwoPi;
      auto i = static_cast<std::int64_t>(std::floor(w / g.cell_size));
      i %= count;
      if (i < 0) i += count;
      out.idx[d] = static_cast<std::int32_t>(i);
    } else {
      if (!(s[d] >= g.lower) || !(s[d] < g.upper)) return false;
      auto i = static_cast<std::int64_t>(std::floor((s[d] - g.lower) / g.cell_size));
      if (i < 0) i = 0;
      if (i >= count) i = count - 1;  // guards rounding at the upper edge
      out.idx[d] = static_cast<std::int32_t>(i);
    }
  }
  return true;
}

CellIndex GridSpec::cell_of(const State& s) const {
  CellIndex c;
  if (!try_cell_of(s, c)) {
    throw OutOfDomainError("cell_of: state outside grid bounds");
  }
  return c;
}

bool GridSpec::valid(const CellIndex& c) const {
  if (c.dim != dim()) return false;
  for (int d = 0; d < dim(); ++d) {
    if (c.idx[d] < 0 || c.idx[d] >= counts_[d]) return false;
  }
  return true;
}

State GridSpec::midpoint_of(const CellIndex& c) const {
  if (!valid(c)) {
    throw std::invalid_argument("midpoint_of: invalid cell index");
  }
  State s = State::zeros(dim());
  for (int d = 0; d < dim(); ++d) {
    const GridDim& g = dims_[d];
    double v = g.lower + (c.idx[d] + 0.5) * g.cell_size;
    if (g.angular) {
      v = std::fmod(v, kTwoPi);
      if (v < 0.0) v += kTwoPi;
      if (v >= kTwoPi) v = 0.0;
    }
    s[d] = v;
  }
  return s;
}

std::vector<State> GridSpec::sample_in_cell(const CellIndex& c, int n,
                                            Rng& rng) const {
  if (n < 1) {
    throw std::invalid_argument("sample_in_cell: n must be >= 1");
  }
  std::vector<State> out;
  out.reserve(n);
  const State mid = midpoint_of(c);
  if (n == 1) {
    out.push_back(mid);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    State s = mid;
    for (int d = 0; d < dim(); ++d) {
      double v = mid[d] + (uniform01(rng) - 0.5) * dims_[d].cell_size;
      if (dims_[d].angular) {
        v = std::fmod(v, kTwoPi);
        if (v < 0.0) v += kTwoPi;
      }
      s[d] = v;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace cuniform
