#include "sturmlab/bigreal.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace sturmlab {

namespace {
mpfr_prec_t pmax(const BigReal& a, const BigReal& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

BigReal::BigReal() : BigReal(0L, kDefaultPrec) {}

BigReal BigReal::zero(mpfr_prec_t prec) { return BigReal(0L, prec); }

BigReal::BigReal(long v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, z.get_mpz_t(), rnd);
}

BigReal::BigReal(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), rnd);
}

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_string(const std::string& s, mpfr_prec_t prec) {
  BigReal r = BigReal::zero(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("bad real literal: " + s);
  return r;
}

BigReal BigReal::inf(int sign, mpfr_prec_t prec) {
  BigReal r = BigReal::zero(prec);
  mpfr_set_inf(r.v_, sign);
  return r;
}

BigReal BigReal::nan(mpfr_prec_t prec) {
  BigReal r = BigReal::zero(prec);
  mpfr_set_nan(r.v_);
  return r;
}

BigReal BigReal::with_prec(mpfr_prec_t p) const {
  BigReal r = BigReal::zero(p);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string BigReal::to_fixed(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNf", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string BigReal::to_sci(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

mpq_class BigReal::to_rational() const {
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  q.canonicalize();
  return q;
}

mpz_class BigReal::floor_z() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

mpz_class BigReal::round_z() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

BigReal& BigReal::operator+=(const BigReal& o) { return *this = *this + o; }
BigReal& BigReal::operator-=(const BigReal& o) { return *this = *this - o; }
BigReal& BigReal::operator*=(const BigReal& o) { return *this = *this * o; }
BigReal& BigReal::operator/=(const BigReal& o) { return *this = *this / o; }

BigReal BigReal::operator-() const {
  BigReal r = BigReal::zero(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r = BigReal::zero(x.prec());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal log(const BigReal& x, mpfr_rnd_t rnd) {
  BigReal r = BigReal::zero(x.prec());
  mpfr_log(r.get(), x.get(), rnd);
  return r;
}

BigReal exp(const BigReal& x, mpfr_rnd_t rnd) {
  BigReal r = BigReal::zero(x.prec());
  mpfr_exp(r.get(), x.get(), rnd);
  return r;
}

BigReal sqrt(const BigReal& x, mpfr_rnd_t rnd) {
  BigReal r = BigReal::zero(x.prec());
  mpfr_sqrt(r.get(), x.get(), rnd);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal log_abs(const mpz_class& z, mpfr_prec_t prec) {
  if (z == 0) return BigReal::inf(-1, prec);
  mpz_class a = abs(z);
  // Exact conversion needs as many bits as the integer has.
  mpfr_prec_t need = std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(mpz_sizeinbase(a.get_mpz_t(), 2)));
  BigReal x(a, need);
  BigReal r = BigReal::zero(prec);
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace sturmlab
