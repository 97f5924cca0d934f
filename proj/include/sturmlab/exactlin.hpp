#pragma once

#include <gmpxx.h>

#include <array>
#include <string>

#include "sturmlab/bigreal.hpp"
#include "sturmlab/error.hpp"

namespace sturmlab {

using Int = mpz_class;

struct IntMat2 {
  Int a11, a12, a21, a22;

  IntMat2() : a11(0), a12(0), a21(0), a22(0) {}
  IntMat2(Int x11, Int x12, Int x21, Int x22)
      : a11(std::move(x11)), a12(std::move(x12)), a21(std::move(x21)), a22(std::move(x22)) {}

  static IntMat2 identity() { return {1, 0, 0, 1}; }
  static IntMat2 J() { return {0, 1, -1, 0}; }

  Int det() const { return a11 * a22 - a12 * a21; }
  Int trace() const { return a11 + a22; }
  IntMat2 transpose() const { return {a11, a21, a12, a22}; }
  IntMat2 adj() const { return {a22, -a12, -a21, a11}; }
  bool is_symmetric() const { return a12 == a21; }
  bool is_zero() const { return a11 == 0 && a12 == 0 && a21 == 0 && a22 == 0; }
  // max |a_ij|
  Int max_norm() const;
  std::string str() const;

  friend bool operator==(const IntMat2& x, const IntMat2& y) {
    return x.a11 == y.a11 && x.a12 == y.a12 && x.a21 == y.a21 && x.a22 == y.a22;
  }
  friend bool operator!=(const IntMat2& x, const IntMat2& y) { return !(x == y); }
};

IntMat2 operator*(const IntMat2& x, const IntMat2& y);
IntMat2 operator*(const Int& c, const IntMat2& x);
IntMat2 operator+(const IntMat2& x, const IntMat2& y);
IntMat2 operator-(const IntMat2& x, const IntMat2& y);
IntMat2 pow(const IntMat2& x, unsigned n);

// Integer 3-vector (x0,x1,x2) <-> symmetric [[x0,x1],[x1,x2]].
struct SymVec {
  Int x0, x1, x2;

  SymVec() : x0(0), x1(0), x2(0) {}
  SymVec(Int a, Int b, Int c) : x0(std::move(a)), x1(std::move(b)), x2(std::move(c)) {}

  // Throws BadIndex if m is not symmetric.
  static SymVec from_matrix(const IntMat2& m);
  IntMat2 to_matrix() const { return {x0, x1, x1, x2}; }

  const Int& operator[](int i) const { return i == 0 ? x0 : (i == 1 ? x1 : x2); }
  Int& operator[](int i) { return i == 0 ? x0 : (i == 1 ? x1 : x2); }

  Int det() const { return x0 * x2 - x1 * x1; }
  Int trace() const { return x0 + x2; }
  bool is_zero() const { return x0 == 0 && x1 == 0 && x2 == 0; }
  Int max_norm() const;
  // Squared Euclidean norm.
  Int norm2() const { return x0 * x0 + x1 * x1 + x2 * x2; }
  std::string str() const;

  friend bool operator==(const SymVec& a, const SymVec& b) {
    return a.x0 == b.x0 && a.x1 == b.x1 && a.x2 == b.x2;
  }
  friend bool operator!=(const SymVec& a, const SymVec& b) { return !(a == b); }
};

SymVec operator+(const SymVec& a, const SymVec& b);
SymVec operator-(const SymVec& a, const SymVec& b);
SymVec operator-(const SymVec& a);
SymVec operator*(const Int& c, const SymVec& a);

SymVec wedge(const SymVec& x, const SymVec& y);
Int dot(const SymVec& x, const SymVec& y);
Int det3(const SymVec& x, const SymVec& y, const SymVec& z);
// Tr(JxJyJz), the matrix form of det3.
Int det3_trace(const SymVec& x, const SymVec& y, const SymVec& z);

Int content(const SymVec& v);
Int content(const IntMat2& m);
SymVec primitive(const SymVec& v);

// Rational vector num/den in lowest terms with den > 0.
class RatVec {
 public:
  RatVec() : num_(), den_(1) {}
  RatVec(SymVec num, Int den);
  explicit RatVec(SymVec num) : RatVec(std::move(num), 1) {}

  const SymVec& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_integral() const { return den_ == 1; }
  // c * this, which must be integral.
  SymVec scaled_integral(const Int& c) const;
  mpq_class coord(int i) const { return mpq_class(num_[i], den_); }

  friend bool operator==(const RatVec& a, const RatVec& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatVec& a, const RatVec& b) { return !(a == b); }
  friend RatVec operator+(const RatVec& a, const RatVec& b);
  friend RatVec operator-(const RatVec& a, const RatVec& b);
  friend RatVec operator*(const Int& c, const RatVec& a);
  std::string str() const;

 private:
  SymVec num_;
  Int den_;
};

RatVec wedge(const RatVec& x, const RatVec& y);

// Euclidean norm and its logarithm, at precision prec.
BigReal euclid_norm(const SymVec& v, mpfr_prec_t prec = BigReal::kDefaultPrec);
BigReal log_euclid_norm(const SymVec& v, mpfr_prec_t prec = BigReal::kDefaultPrec);
BigReal log_max_norm(const IntMat2& m, mpfr_prec_t prec = BigReal::kDefaultPrec);

}  // namespace sturmlab
