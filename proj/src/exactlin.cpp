#include "sturmlab/exactlin.hpp"

#include <algorithm>
#include <sstream>

namespace sturmlab {

namespace {
Int absmax(std::initializer_list<const Int*> xs) {
  Int m = 0;
  for (const Int* x : xs) {
    Int a = abs(*x);
    if (a > m) m = a;
  }
  return m;
}
}  // namespace

Int IntMat2::max_norm() const { return absmax({&a11, &a12, &a21, &a22}); }

std::string IntMat2::str() const {
  std::ostringstream os;
  os << "[[" << a11 << "," << a12 << "],[" << a21 << "," << a22 << "]]";
  return os.str();
}

IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

IntMat2 operator*(const Int& c, const IntMat2& x) {
  return {c * x.a11, c * x.a12, c * x.a21, c * x.a22};
}

IntMat2 operator+(const IntMat2& x, const IntMat2& y) {
  return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
}

IntMat2 operator-(const IntMat2& x, const IntMat2& y) {
  return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
}

IntMat2 pow(const IntMat2& x, unsigned n) {
  IntMat2 r = IntMat2::identity();
  IntMat2 b = x;
  while (n) {
    if (n & 1u) r = r * b;
    n >>= 1u;
    if (n) b = b * b;
  }
  return r;
}

SymVec SymVec::from_matrix(const IntMat2& m) {
  if (!m.is_symmetric()) throw Error(Errc::BadIndex, "matrix is not symmetric: " + m.str());
  return {m.a11, m.a12, m.a22};
}

Int SymVec::max_norm() const { return absmax({&x0, &x1, &x2}); }

std::string SymVec::str() const {
  std::ostringstream os;
  os << "(" << x0 << "," << x1 << "," << x2 << ")";
  return os.str();
}

SymVec operator+(const SymVec& a, const SymVec& b) { return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2}; }
SymVec operator-(const SymVec& a, const SymVec& b) { return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2}; }
SymVec operator-(const SymVec& a) { return {-a.x0, -a.x1, -a.x2}; }
SymVec operator*(const Int& c, const SymVec& a) { return {c * a.x0, c * a.x1, c * a.x2}; }

SymVec wedge(const SymVec& x, const SymVec& y) {
  return {x.x1 * y.x2 - x.x2 * y.x1, x.x2 * y.x0 - x.x0 * y.x2, x.x0 * y.x1 - x.x1 * y.x0};
}

Int dot(const SymVec& x, const SymVec& y) { return x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2; }

Int det3(const SymVec& x, const SymVec& y, const SymVec& z) { return dot(x, wedge(y, z)); }

Int det3_trace(const SymVec& x, const SymVec& y, const SymVec& z) {
  const IntMat2 J = IntMat2::J();
  return (J * x.to_matrix() * J * y.to_matrix() * J * z.to_matrix()).trace();
}

Int content(const SymVec& v) {
  if (v.is_zero()) throw Error(Errc::ZeroObject, "content of the zero vector");
  Int g;
  mpz_gcd(g.get_mpz_t(), v.x0.get_mpz_t(), v.x1.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.x2.get_mpz_t());
  return g;
}

Int content(const IntMat2& m) {
  if (m.is_zero()) throw Error(Errc::ZeroObject, "content of the zero matrix");
  Int g;
  mpz_gcd(g.get_mpz_t(), m.a11.get_mpz_t(), m.a12.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.a21.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.a22.get_mpz_t());
  return g;
}

SymVec primitive(const SymVec& v) {
  Int c = content(v);
  SymVec r;
  for (int i = 0; i < 3; ++i) mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), c.get_mpz_t());
  return r;
}

RatVec::RatVec(SymVec num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error(Errc::ZeroObject, "zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  Int g = den_;
  for (int i = 0; i < 3; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num_[i].get_mpz_t());
  if (g != 1) {
    for (int i = 0; i < 3; ++i) mpz_divexact(num_[i].get_mpz_t(), num_[i].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

SymVec RatVec::scaled_integral(const Int& c) const {
  SymVec r = c * num_;
  for (int i = 0; i < 3; ++i) {
    if (!mpz_divisible_p(r[i].get_mpz_t(), den_.get_mpz_t()))
      throw Error(Errc::BadIndex, "scaled vector is not integral");
    mpz_divexact(r[i].get_mpz_t(), r[i].get_mpz_t(), den_.get_mpz_t());
  }
  return r;
}

RatVec operator+(const RatVec& a, const RatVec& b) {
  return RatVec(b.den_ * a.num_ + a.den_ * b.num_, a.den_ * b.den_);
}

RatVec operator-(const RatVec& a, const RatVec& b) {
  return RatVec(b.den_ * a.num_ - a.den_ * b.num_, a.den_ * b.den_);
}

RatVec operator*(const Int& c, const RatVec& a) { return RatVec(c * a.num_, a.den_); }

std::string RatVec::str() const {
  if (den_ == 1) return num_.str();
  std::ostringstream os;
  os << num_.str() << "/" << den_;
  return os.str();
}

RatVec wedge(const RatVec& x, const RatVec& y) {
  return RatVec(wedge(x.num(), y.num()), x.den() * y.den());
}

BigReal euclid_norm(const SymVec& v, mpfr_prec_t prec) {
  Int n2 = v.norm2();
  mpfr_prec_t need = std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(mpz_sizeinbase(n2.get_mpz_t(), 2)));
  BigReal x(n2, need);
  BigReal r = BigReal::zero(prec);
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal log_euclid_norm(const SymVec& v, mpfr_prec_t prec) {
  if (v.is_zero()) throw Error(Errc::ZeroObject, "log norm of zero");
  BigReal l = log_abs(v.norm2(), prec + 8);
  mpfr_div_2ui(l.get(), l.get(), 1, MPFR_RNDN);
  return l.with_prec(prec);
}

BigReal log_max_norm(const IntMat2& m, mpfr_prec_t prec) { return log_abs(m.max_norm(), prec); }

}  // namespace sturmlab
