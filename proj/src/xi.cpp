#include "sturmlab/xi.hpp"

#include <cmath>

#include "sturmlab/sturm.hpp"

namespace sturmlab {

namespace {

mpq_class qabs(const mpq_class& x) { return x < 0 ? mpq_class(-x) : x; }

// 2^-bits as a rational
mpq_class pow2_neg(long bits) {
  mpz_class d = 1;
  d <<= static_cast<mp_bitcnt_t>(bits);
  return mpq_class(1, d);
}

long bitlen(const Int& z) { return z == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

long bitlen(const SymVec& v) { return std::max({bitlen(v.x0), bitlen(v.x1), bitlen(v.x2)}); }

using RVec = std::array<BigReal, 3>;

RVec to_real(const SymVec& v, mpfr_prec_t p) {
  return {BigReal(v.x0, p), BigReal(v.x1, p), BigReal(v.x2, p)};
}

RVec to_real(const RatVec& v, mpfr_prec_t p) {
  BigReal d(v.den(), p);
  return {BigReal(v.num().x0, p) / d, BigReal(v.num().x1, p) / d, BigReal(v.num().x2, p) / d};
}

BigReal rnorm(const RVec& v) { return sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

RVec rwedge(const RVec& a, const RVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

BigReal rdot(const RVec& a, const RVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double logd(const BigReal& x) { return log(abs(x)).to_double(); }

}  // namespace

std::string XiValue::digits(int d) const {
  BigReal err = BigReal((hi - lo) / 2, prec);
  return value.to_fixed(d) + " +- " + err.to_sci(3);
}

XiValue xi_value(ApproxSeq& ap, long precision_bits, long index_budget) {
  if (precision_bits < 1) throw Error(Errc::BadWindow, "precision_bits must be >= 1");
  if (ap.mseq().seed().TrJN == 0) throw Error(Errc::NoConvergence, "seed is not proper-capable (Tr(JN) = 0)");
  XiValue xv;
  xv.prec = std::max<mpfr_prec_t>(BigReal::kDefaultPrec, precision_bits + 32);
  const mpq_class target = pow2_neg(precision_bits);

  std::vector<mpq_class> r;
  std::optional<mpq_class> prev_step;
  bool started = false;
  for (long i = 0; i <= index_budget; ++i) {
    const SymVec& y = ap.y(i);
    if (y.x0 == 0) continue;
    r.emplace_back(y.x1, y.x0);
    r.back().canonicalize();
    if (r.size() < 2) continue;
    mpq_class step = qabs(r[r.size() - 1] - r[r.size() - 2]);
    if (prev_step && *prev_step != 0) {
      mpq_class rho = step / *prev_step;
      xv.contraction.push_back(rho.get_d());
      if (rho < mpq_class(1, 2)) {
        mpq_class rad = 2 * rho * step;
        mpq_class lo = r.back() - rad, hi = r.back() + rad;
        if (started) {
          if (lo < xv.lo) lo = xv.lo;
          if (hi > xv.hi) hi = xv.hi;
        }
        xv.lo = lo;
        xv.hi = hi;
        xv.index = i;
        xv.history.emplace_back(lo, hi);
        started = true;
        if (hi - lo < target) break;
      }
    }
    prev_step = step;
    if (step == 0) {
      xv.lo = xv.hi = r.back();
      xv.index = i;
      started = true;
      break;
    }
  }
  if (!started || xv.hi - xv.lo >= target)
    throw Error(Errc::NoConvergence, "enclosure did not reach the requested width within the index budget");
  mpq_class mid = (xv.lo + xv.hi) / 2;
  xv.value = BigReal(mid, xv.prec);
  xv.u = {BigReal(1L, xv.prec), xv.value, xv.value * xv.value};
  return xv;
}

mpq_class bl_continued_fraction(const MatrixSeed& seed, const SturmianProgram& prog, long precision_bits) {
  if (seed.family != Family::BL) throw Error(Errc::BadSequence, "continued fraction oracle needs a BL seed");
  long s1p = seed.c;
  auto sp = [&](long k) { return k == 1 ? s1p : prog.s(k); };
  // each partial quotient is >= 1, so 2 bits per term is a safe length
  size_t n = static_cast<size_t>(2 * precision_bits + 16);
  std::vector<long> word = characteristic_word(sp, seed.a, seed.b, n);
  mpq_class v = word.back();
  for (size_t j = word.size() - 1; j-- > 0;) v = mpq_class(word[j]) + 1 / v;
  return 1 / v;
}

Properness properness_check(ApproxSeq& ap, long k_max) {
  MatrixSequence& ms = ap.mseq();
  Properness p;
  p.k_max = k_max;
  DeltaReport dr = delta_estimate(ms, k_max);
  p.delta_hat = dr.delta_hat;
  CFQuantities q = quantities(ms.prog());
  BigReal one(1L, q.sigma.prec());
  p.threshold = q.sigma / (one + q.sigma);
  p.delta_ok = p.delta_hat < p.threshold;
  if (dr.certified_bracket) {
    p.bracket = dr.certified_bracket;
    p.bracket_certifies = p.bracket->second < p.threshold;
  } else if (dr.exact_zero) {
    p.bracket_certifies = true;
  }
  p.trjn_nonzero = ms.seed().TrJN != 0;
  ContentReport cr = contents_report(ap, ms.prog().t(k_max));
  p.max_content = cr.max_content_y;
  p.content_bounded = true;
  for (const auto& row : cr.rows)
    if (!row.y_divides_detN) p.content_bounded = false;
  p.proper = p.delta_ok && p.content_bounded && p.trjn_nonzero;
  return p;
}

double DiagFamily::spread() const { return std::exp(max - min); }

DiagnosticsTable norm_diagnostics(ApproxSeq& ap, const XiValue& xi, long i_lo, long i_hi) {
  const SturmianProgram& prog = ap.prog();
  MatrixSequence& ms = ap.mseq();
  if (i_lo < 0 || i_hi < i_lo) throw Error(Errc::BadWindow, "bad index range");
  long need = 2 * bitlen(ap.y(i_hi + 1)) + 64;
  if (xi.hi - xi.lo >= pow2_neg(need))
    throw Error(Errc::BadWindow, "xi enclosure too wide for this index range; need " + std::to_string(need) + " bits");
  mpfr_prec_t p = std::max<mpfr_prec_t>(xi.prec, need + 64);
  BigReal x = xi.value.with_prec(p);
  RVec u{BigReal(1L, p), x, x * x};

  DiagnosticsTable t;
  t.burn_in = prog.t(3);
  bool first = true;
  for (long i = i_lo; i <= i_hi; ++i) {
    const SymVec& yi = ap.y(i);
    RVec ry = to_real(yi, p), ry1 = to_real(ap.y(i + 1), p), rp = to_real(ap.y(prog.psi(i)), p);
    RVec rz = to_real(ap.z(i), p);
    BigReal dety = abs(BigReal(yi.det(), p));
    BigReal ny = rnorm(ry), ny1 = rnorm(ry1), np = rnorm(rp);
    DiagRow row;
    row.i = i;
    row.r[0] = logd(rnorm(rwedge(ry, u)) * ny / dety);
    row.r[1] = logd(ny1 * np / (ny * ny));
    row.r[2] = logd(rnorm(rz) / np);
    row.r[3] = logd(rdot(rz, ry1) / dety);
    row.r[4] = logd(rdot(rz, u) * ny1 / dety);
    for (int f = 0; f < 5; ++f) {
      if (first || row.r[f] < t.fam[f].min) t.fam[f].min = row.r[f];
      if (first || row.r[f] > t.fam[f].max) t.fam[f].max = row.r[f];
    }
    first = false;
    t.rows.push_back(row);

    for (long j : {i + 1, i + 2}) {
      const SymVec& yj = ap.y(j);
      IntMat2 m = yi.to_matrix() * yj.to_matrix().adj();
      BigReal num = euclid_norm(wedge(yi, yj), p);
      BigReal mx(m.max_norm(), p);
      t.wedge_ratio_log.push_back({{i, j}, logd(num / mx)});
    }

    if (i >= t.burn_in) {
      bool grow = ny < ny1;
      bool shrink = rnorm(rwedge(ry1, u)) < rnorm(rwedge(ry, u));
      if ((!grow || !shrink) && t.monotone_ok) {
        t.monotone_ok = false;
        t.monotone_witness = i;
      }
    }

    auto [k, l] = prog.locate(i);
    if (k >= 1) {
      long tk = prog.t(k);
      Int dk = ms.det(k);
      Int lhs = dot(ap.z(i).num(), ap.y(i + 1));
      RatVec zr = ap.z(i);
      // <z_i, y_{i+1}> det(w_k) = det(w_k)^l det3(y_{t_k-1}, y_{t_k}, y_{t_k+1})
      mpq_class left(lhs, zr.den());
      left *= mpq_class(dk);
      Int pw;
      mpz_pow_ui(pw.get_mpz_t(), dk.get_mpz_t(), static_cast<unsigned long>(l));
      mpq_class right(pw * det3(ap.y(tk - 1), ap.y(tk), ap.y(tk + 1)));
      if (left != right) t.item4_exact = false;
    }
  }
  return t;
}

bool independence_proxy(ApproxSeq& ap, long box, long i_max) {
  std::vector<SymVec> ys;
  for (long i = -2; i <= i_max; ++i) ys.push_back(ap.y(i));
  for (long a = -box; a <= box; ++a)
    for (long b = -box; b <= box; ++b)
      for (long c = -box; c <= box; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        SymVec v(a, b, c);
        bool hit = false;
        for (const auto& y : ys)
          if (dot(v, y) != 0) {
            hit = true;
            break;
          }
        if (!hit) return false;
      }
  return true;
}

}  // namespace sturmlab
