#pragma once

#include <string>

#include "sturmlab/bigreal.hpp"
#include "sturmlab/exactlin.hpp"

namespace sturmlab {

// Numeric values of the basis: B0 = log Ŵ_{k0-1}, B1 = log Ŵ_{k0}, and δ.
struct LogBasis {
  BigReal B0, B1, delta;
};

// (a0 + b0 δ) B0 + (a1 + b1 δ) B1 with integer coefficients.
struct LogForm {
  Int a0 = 0, b0 = 0, a1 = 0, b1 = 0;

  static LogForm B0() { return {1, 0, 0, 0}; }
  static LogForm B1() { return {0, 0, 1, 0}; }

  bool is_zero() const { return a0 == 0 && b0 == 0 && a1 == 0 && b1 == 0; }
  bool has_delta() const { return b0 != 0 || b1 != 0; }
  // δ times this; throws OutOfRange if a δ² term would appear.
  LogForm times_delta() const;
  BigReal eval(const LogBasis& b) const;
  std::string str() const;

  friend LogForm operator+(const LogForm& x, const LogForm& y) {
    return {x.a0 + y.a0, x.b0 + y.b0, x.a1 + y.a1, x.b1 + y.b1};
  }
  friend LogForm operator-(const LogForm& x, const LogForm& y) {
    return {x.a0 - y.a0, x.b0 - y.b0, x.a1 - y.a1, x.b1 - y.b1};
  }
  friend LogForm operator-(const LogForm& x) { return {-x.a0, -x.b0, -x.a1, -x.b1}; }
  friend LogForm operator*(const Int& c, const LogForm& x) { return {c * x.a0, c * x.b0, c * x.a1, c * x.b1}; }
  friend bool operator==(const LogForm& x, const LogForm& y) { return (x - y).is_zero(); }
  friend bool operator!=(const LogForm& x, const LogForm& y) { return !(x == y); }
};

// (c + d δ) x
LogForm scale(long c, long d, const LogForm& x);

}  // namespace sturmlab
