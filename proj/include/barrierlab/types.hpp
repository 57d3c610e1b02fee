#pragma once

#include <complex>
#include <limits>

namespace barrierlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-open placement convention: a point x belongs to the segment with
/// interval.lo <= x < interval.hi.  Outer free regions use +-infinity.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x < hi; }
};

/// Two independent solutions of a region's second-order ODE together with
/// their x-derivatives, evaluated at one point.
struct BasisPair {
  Complex f1, df1, f2, df2;

  Complex wronskian() const { return f1 * df2 - df1 * f2; }
};

}  // namespace barrierlab
