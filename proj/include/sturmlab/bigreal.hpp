#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace sturmlab {

// MPFR value with its own precision. Binary operations round to the larger
// operand precision, to nearest unless a mode is given.
class BigReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 256;

  BigReal();
  static BigReal zero(mpfr_prec_t prec);
  BigReal(long v, mpfr_prec_t prec = kDefaultPrec);
  BigReal(int v, mpfr_prec_t prec = kDefaultPrec) : BigReal(long(v), prec) {}
  BigReal(double v, mpfr_prec_t prec = kDefaultPrec);
  BigReal(const mpz_class& z, mpfr_prec_t prec = kDefaultPrec,
          mpfr_rnd_t rnd = MPFR_RNDN);
  BigReal(const mpq_class& q, mpfr_prec_t prec = kDefaultPrec,
          mpfr_rnd_t rnd = MPFR_RNDN);
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  static BigReal from_string(const std::string& s, mpfr_prec_t prec = kDefaultPrec);
  static BigReal inf(int sign = 1, mpfr_prec_t prec = kDefaultPrec);
  static BigReal nan(mpfr_prec_t prec = kDefaultPrec);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  BigReal with_prec(mpfr_prec_t p) const;
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Fixed-point decimal with `digits` digits after the point.
  std::string to_fixed(int digits) const;
  // Shortest-ish scientific form with `digits` significant digits.
  std::string to_sci(int digits = 20) const;
  mpq_class to_rational() const;
  mpz_class floor_z() const;
  mpz_class round_z() const;

  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return !mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal log(const BigReal& x, mpfr_rnd_t rnd = MPFR_RNDN);
BigReal exp(const BigReal& x, mpfr_rnd_t rnd = MPFR_RNDN);
BigReal sqrt(const BigReal& x, mpfr_rnd_t rnd = MPFR_RNDN);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

// log|z| for a nonzero integer, evaluated at precision `prec`.
BigReal log_abs(const mpz_class& z, mpfr_prec_t prec = BigReal::kDefaultPrec);

}  // namespace sturmlab
