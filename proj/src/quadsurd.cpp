#include "sturmlab/quadsurd.hpp"

#include <sstream>
#include <stdexcept>

namespace sturmlab {

int sign_surd(const mpz_class& a, const mpz_class& b, const mpz_class& d) {
  int sa = sgn(a);
  int sb = (d == 0) ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 d
  mpz_class diff = a * a - b * b * d;
  int s = sgn(diff);
  if (s == 0) return 0;
  return s > 0 ? sa : sb;
}

QuadSurd::QuadSurd(mpz_class p, mpz_class q, mpz_class r, mpz_class d)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {
  if (r_ == 0) throw std::domain_error("QuadSurd: zero denominator");
  if (d_ < 0) throw std::domain_error("QuadSurd: negative radicand");
  normalize();
}

QuadSurd QuadSurd::rational(const mpq_class& x) { return QuadSurd(x.get_num(), 0, x.get_den(), 0); }

void QuadSurd::normalize() {
  if (d_ == 0 || q_ == 0) {
    q_ = 0;
    d_ = 0;
  } else {
    // pull square factors out of d for small primes; enough to canonicalize
    // the radicands produced by periodic continued fractions in practice
    mpz_class s;
    if (mpz_perfect_square_p(d_.get_mpz_t())) {
      mpz_sqrt(s.get_mpz_t(), d_.get_mpz_t());
      p_ += q_ * s;
      q_ = 0;
      d_ = 0;
    } else {
      for (unsigned long f = 2; f < 1000; ++f) {
        mpz_class ff = f * f;
        if (ff > d_) break;
        while (mpz_divisible_p(d_.get_mpz_t(), ff.get_mpz_t())) {
          d_ /= ff;
          q_ *= f;
        }
      }
    }
  }
  if (r_ < 0) {
    r_ = -r_;
    p_ = -p_;
    q_ = -q_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

QuadSurd QuadSurd::reciprocal() const {
  // r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
  mpz_class den = p_ * p_ - q_ * q_ * d_;
  if (den == 0) throw std::domain_error("QuadSurd: reciprocal of zero");
  return QuadSurd(r_ * p_, -r_ * q_, den, d_);
}

QuadSurd QuadSurd::mobius(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                          const mpz_class& e) const {
  // numerator (a p + b r) + a q sqrt d, denominator (c p + e r) + c q sqrt d
  mpz_class n0 = a * p_ + b * r_, n1 = a * q_;
  mpz_class m0 = c * p_ + e * r_, m1 = c * q_;
  mpz_class den = m0 * m0 - m1 * m1 * d_;
  if (den == 0) throw std::domain_error("QuadSurd: mobius pole");
  mpz_class np = n0 * m0 - n1 * m1 * d_;
  mpz_class nq = n1 * m0 - n0 * m1;
  return QuadSurd(np, nq, den, d_);
}

int QuadSurd::sign() const { return sign_surd(p_, q_, d_); }

BigReal QuadSurd::value(mpfr_prec_t prec) const {
  mpfr_prec_t wp = prec + 32;
  BigReal s = sqrt(BigReal(d_, wp));
  BigReal v = (BigReal(p_, wp) + BigReal(q_, wp) * s) / BigReal(r_, wp);
  return v.with_prec(prec);
}

std::string QuadSurd::str() const {
  std::ostringstream os;
  os << "(" << p_;
  if (q_ != 0) os << (q_ < 0 ? "-" : "+") << abs(q_) << "*sqrt(" << d_ << ")";
  os << ")/" << r_;
  return os.str();
}

int compare(const QuadSurd& x, const QuadSurd& y) {
  // sign of (x.p y.r - y.p x.r) + x.q y.r sqrt(x.d) - y.q x.r sqrt(y.d)
  mpz_class a = x.p_ * y.r_ - y.p_ * x.r_;
  mpz_class b = x.q_ * y.r_;
  mpz_class c = -y.q_ * x.r_;
  if (x.d_ == y.d_) return sign_surd(a, b + c, x.d_);
  if (y.is_rational()) return sign_surd(a, b, x.d_);
  if (x.is_rational()) return sign_surd(a, c, y.d_);
  int sx = sign_surd(a, b, x.d_);
  int sy = sgn(c);
  if (sx == 0) return sy;
  if (sy == 0 || sx == sy) return sx;
  // |X| vs |Y| with X = a + b sqrt(dx), Y = c sqrt(dy)
  int s = sign_surd(a * a + b * b * x.d_ - c * c * y.d_, 2 * a * b, x.d_);
  if (s == 0) return 0;
  return s > 0 ? sx : sy;
}

QuadSurd cf_with_tail(const std::vector<long>& head, const QuadSurd& tail) {
  QuadSurd v = tail;
  for (auto it = head.rbegin(); it != head.rend(); ++it) v = v.mobius(*it, 1, 1, 0);
  return v;
}

QuadSurd periodic_cf(const std::vector<long>& period) {
  if (period.empty()) throw std::invalid_argument("periodic_cf: empty period");
  // x = M(x) with M = prod [[a,1],[1,0]] = [[P, P'],[Q, Q']]
  mpz_class P = 1, Pp = 0, Q = 0, Qp = 1;
  for (long a : period) {
    mpz_class nP = P * a + Pp, nQ = Q * a + Qp;
    Pp = P;
    Qp = Q;
    P = nP;
    Q = nQ;
  }
  // Q x^2 + (Q' - P) x - P' = 0, positive root
  mpz_class B = Qp - P;
  mpz_class disc = B * B + 4 * Q * Pp;
  return QuadSurd(-B, 1, 2 * Q, disc);
}

QuadSurd eventually_periodic_cf(const std::vector<long>& prefix, const std::vector<long>& period) {
  return cf_with_tail(prefix, periodic_cf(period));
}

}  // namespace sturmlab
