#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sturmlab/bigreal.hpp"

namespace sturmlab {

// (p + q*sqrt(d)) / r with r > 0 and d >= 0. Values from different fields
// compare exactly as well.
class QuadSurd {
 public:
  QuadSurd() : p_(0), q_(0), r_(1), d_(0) {}
  QuadSurd(mpz_class p, mpz_class q, mpz_class r, mpz_class d);
  static QuadSurd rational(const mpq_class& x);

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const mpz_class& r() const { return r_; }
  const mpz_class& d() const { return d_; }
  bool is_rational() const { return q_ == 0 || d_ == 0; }

  QuadSurd reciprocal() const;
  // (a x + b) / (c x + e)
  QuadSurd mobius(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& e) const;
  int sign() const;
  BigReal value(mpfr_prec_t prec = BigReal::kDefaultPrec) const;
  std::string str() const;

  friend int compare(const QuadSurd& x, const QuadSurd& y);
  friend bool operator<(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) < 0; }
  friend bool operator>(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) > 0; }
  friend bool operator<=(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) <= 0; }
  friend bool operator>=(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) >= 0; }
  friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) == 0; }

 private:
  void normalize();
  mpz_class p_, q_, r_, d_;
};

// sign of a + b*sqrt(d), d >= 0
int sign_surd(const mpz_class& a, const mpz_class& b, const mpz_class& d);

// Value of the purely periodic continued fraction [a0; a1, ..., a_{n-1}, a0, ...].
QuadSurd periodic_cf(const std::vector<long>& period);
// [c0; c1, ..., c_{m-1}, tail] where tail is the value of the remaining expansion.
QuadSurd cf_with_tail(const std::vector<long>& head, const QuadSurd& tail);
// [b0; b1, ...] for b = prefix followed by the repeated period.
QuadSurd eventually_periodic_cf(const std::vector<long>& prefix, const std::vector<long>& period);

}  // namespace sturmlab
