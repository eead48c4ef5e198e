#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace cuniform {

// Hard cap on state/control dimensionality; keeps states and cell indices
// inline (no heap) on the sampling hot path.
inline constexpr int kMaxDims = 4;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  bool operator==(const Interval&) const = default;
};

namespace detail {

// Fixed-capacity coordinate vector. Unused slots stay zero so that
// equality and hashing can look at the whole array.
template <class Tag>
class SmallVec {
 public:
  SmallVec() = default;

  SmallVec(std::initializer_list<double> coords) {
    if (static_cast<int>(coords.size()) > kMaxDims) {
      throw std::invalid_argument("SmallVec: too many coordinates");
    }
    for (double c : coords) c_[dim_++] = c;
  }

  static SmallVec zeros(int dim) {
    if (dim < 0 || dim > kMaxDims) {
      throw std::invalid_argument("SmallVec: bad dimension");
    }
    SmallVec v;
    v.dim_ = dim;
    return v;
  }

  int size() const { return dim_; }

  double operator[](int d) const { return c_[d]; }
  double& operator[](int d) { return c_[d]; }

  bool operator==(const SmallVec&) const = default;

 private:
  std::array<double, kMaxDims> c_{};
  int dim_ = 0;
};

}  // namespace detail

using State = detail::SmallVec<struct StateTag>;
using ControlInput = detail::SmallVec<struct ControlTag>;

}  // namespace cuniform
