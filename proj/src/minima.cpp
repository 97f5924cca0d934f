#include "sturmlab/minima.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <limits>
#include <tuple>

namespace sturmlab {

namespace {

using Key = std::tuple<Int, Int, Int>;

constexpr long kFanWidth = 40;

// x or -x, whichever has its first nonzero coordinate positive
SymVec sign_normal(const SymVec& x) {
  const Int& lead = x.x0 != 0 ? x.x0 : (x.x1 != 0 ? x.x1 : x.x2);
  return lead < 0 ? -x : x;
}

struct Scored {
  double v;
  const SymVec* x;
  size_t pos;
};

// Successive minima by the greedy rule on points sorted by value.
std::vector<size_t> greedy_independent(std::vector<Scored>& pts) {
  std::stable_sort(pts.begin(), pts.end(), [](const Scored& a, const Scored& b) { return a.v < b.v; });
  std::vector<size_t> pick;
  std::vector<const SymVec*> basis;
  for (const auto& s : pts) {
    bool indep = false;
    if (basis.empty())
      indep = !s.x->is_zero();
    else if (basis.size() == 1)
      indep = !wedge(*basis[0], *s.x).is_zero();
    else
      indep = det3(*basis[0], *basis[1], *s.x) != 0;
    if (!indep) continue;
    basis.push_back(s.x);
    pick.push_back(s.pos);
    if (pick.size() == 3) break;
  }
  return pick;
}

struct DVec {
  double u1, u2;
};

double dnorm(double a, double b, double c) { return std::sqrt(a * a + b * b + c * c); }

double dwedge_norm(double x0, double x1, double x2, const DVec& u) {
  double w0 = x1 * u.u2 - x2 * u.u1, w1 = x2 - x0 * u.u2, w2 = x0 * u.u1 - x1;
  return dnorm(w0, w1, w2);
}

void finish(MinimaSample& s, const RealVec3& u, const std::vector<SymVec>& pts, bool dual_side) {
  for (int j = 0; j < 3; ++j) {
    Trajectory t = Trajectory::make(pts[j], u);
    if (dual_side) {
      if (!s.Ls) s.Ls = std::array<BigReal, 3>{};
      (*s.Ls)[j] = t.Ls(s.q);
    } else {
      s.L[j] = t.L(s.q);
      s.pts[j] = pts[j];
    }
  }
}

// Lagrange reduction of a rank-2 integer pair.
std::pair<SymVec, SymVec> reduce2(SymVec a, SymVec b) {
  auto n2 = [](const SymVec& v) { return dot(v, v); };
  if (n2(a) > n2(b)) std::swap(a, b);
  while (true) {
    Int d = dot(a, b), na = n2(a);
    mpz_class m;
    // nearest integer to d / na
    mpz_class num = 2 * d + na, den = 2 * na;
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    b = b - Int(m) * a;
    if (n2(b) >= n2(a)) return {a, b};
    std::swap(a, b);
  }
}

// Points m a + n b on the Pareto front of (norm, smallness), smallness = |x.u| (primal) or ||x ^ u|| (dual).
std::vector<SymVec> planar_front(const SymVec& a0, const SymVec& b0, const RealVec3& u, bool primal, long M) {
  if (wedge(a0, b0).is_zero()) return {};
  auto [a, b] = reduce2(a0, b0);
  mpfr_prec_t p = u[0].prec();
  auto rv = [&](const SymVec& v) {
    return RealVec3{BigReal(v.x0, p), BigReal(v.x1, p), BigReal(v.x2, p)};
  };
  RealVec3 ra = rv(a), rb = rv(b);
  double naa = static_cast<double>(dot(a, a).get_d()), nab = dot(a, b).get_d(), nbb = dot(b, b).get_d();
  std::vector<double> fa(3), fb(3);
  if (primal) {
    fa[0] = (ra[0] * u[0] + ra[1] * u[1] + ra[2] * u[2]).to_double();
    fb[0] = (rb[0] * u[0] + rb[1] * u[1] + rb[2] * u[2]).to_double();
  } else {
    auto w = [&](const RealVec3& r) {
      return std::vector<double>{(r[1] * u[2] - r[2] * u[1]).to_double(), (r[2] * u[0] - r[0] * u[2]).to_double(),
                                 (r[0] * u[1] - r[1] * u[0]).to_double()};
    };
    fa = w(ra);
    fb = w(rb);
  }
  struct P {
    double n, s;
    long m, k;
  };
  std::vector<P> all;
  for (long k = 0; k <= M; ++k)
    for (long m = -M; m <= M; ++m) {
      if (k == 0 && m <= 0) continue;
      double n = m * m * naa + 2.0 * m * k * nab + k * k * nbb;
      double s = 0;
      for (size_t c = 0; c < (primal ? 1u : 3u); ++c) {
        double v = m * fa[c] + k * fb[c];
        s += v * v;
      }
      all.push_back({n, s, m, k});
    }
  std::sort(all.begin(), all.end(), [](const P& x, const P& y) { return x.n < y.n || (x.n == y.n && x.s < y.s); });
  std::vector<SymVec> out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : all)
    if (q.s < best) {
      best = q.s;
      out.push_back(Int(q.m) * a + Int(q.k) * b);
    }
  return out;
}

}  // namespace

void CandidateSet::add(const SymVec& x, const RealVec3& u, const std::string& tag) {
  if (x.is_zero()) return;
  items.push_back({Trajectory::make(sign_normal(primitive(x)), u), tag});
}

CandidateSet CandidateSet::build(ApproxSeq& ap, const RealVec3& u, long i_max, long box) {
  CandidateSet c;
  c.i_max = i_max;
  std::set<Key> seen;
  auto put = [&](const SymVec& x, const std::string& tag) {
    if (x.is_zero()) return;
    SymVec p = sign_normal(primitive(x));
    if (!seen.insert({p.x0, p.x1, p.x2}).second) return;
    c.items.push_back({Trajectory::make(p, u), tag});
  };
  for (long i = -2; i <= i_max; ++i) put(ap.y(i), "y" + std::to_string(i));
  for (long j = -1; j <= i_max; ++j) put(ap.z(j).num(), "z" + std::to_string(j));
  for (long i = -2; i <= i_max; ++i)
    for (long j = i + 1; j <= std::min(i + 3, i_max); ++j)
      put(wedge(ap.y(i), ap.y(j)), "y" + std::to_string(i) + "^y" + std::to_string(j));
  if (ap.prog().all_ones()) {
    for (long i = 2; i < i_max; ++i) {
      GrayFan g = gray_fan(ap, i);
      for (const auto& pt : g.pts) {
        std::string tag = "gray" + std::to_string(i) + "." + std::to_string(pt.m);
        put(pt.x, tag);
        put(wedge(pt.x, ap.y(i + 1)), tag + "^y" + std::to_string(i + 1));
        put(wedge(pt.x, ap.y(i - 2)), tag + "^y" + std::to_string(i - 2));
      }
    }
  }
  // planar fans of nearby sequence points, then one more round against the first fans
  std::vector<SymVec> zs, ys;
  for (long j = -1; j <= i_max; ++j) zs.push_back(ap.z(j).num());
  for (long i = -2; i <= i_max; ++i) ys.push_back(ap.y(i));
  auto fans = [&](const std::vector<SymVec>& seq, bool primal, const std::string& tag) {
    std::vector<std::vector<SymVec>> first(seq.size());
    for (size_t n = 0; n < seq.size(); ++n)
      for (size_t m = n + 1; m < std::min(seq.size(), n + 4); ++m)
        for (const auto& x : planar_front(seq[n], seq[m], u, primal, kFanWidth)) {
          first[n].push_back(x);
          put(x, tag + "fan");
        }
    for (size_t n = 0; n < seq.size(); ++n)
      for (size_t m = (n >= 2 ? n - 2 : 0); m < std::min(seq.size(), n + 3); ++m)
        for (const auto& x : first[m])
          for (const auto& w : planar_front(seq[n], x, u, primal, kFanWidth)) put(w, tag + "fan2");
  };
  fans(zs, true, "z");
  fans(ys, false, "y");
  for (long a = -box; a <= box; ++a)
    for (long b = -box; b <= box; ++b)
      for (long d = -box; d <= box; ++d) put(SymVec(a, b, d), "box");
  return c;
}

MinimaSample minima_candidates(const CandidateSet& c, const BigReal& q, bool dual, const SystemBreakpoints* P) {
  if (c.items.empty()) throw Error(Errc::NoCandidates, "empty candidate set");
  MinimaSample s;
  s.q = q;
  s.method = "candidate";
  double qd = q.to_double();
  auto run = [&](bool dual_side) {
    std::vector<Scored> sc;
    sc.reserve(c.items.size());
    for (size_t n = 0; n < c.items.size(); ++n) {
      const Trajectory& t = c.items[n].tr;
      sc.push_back({dual_side ? t.Lsd(qd) : t.Ld(qd), &t.x, n});
    }
    std::vector<size_t> pick = greedy_independent(sc);
    if (pick.size() < 3) throw Error(Errc::NoCandidates, "candidates span less than three dimensions");
    for (int j = 0; j < 3; ++j) {
      const Trajectory& t = c.items[pick[j]].tr;
      if (dual_side) {
        if (!s.Ls) s.Ls = std::array<BigReal, 3>{};
        (*s.Ls)[j] = t.Ls(q);
      } else {
        s.L[j] = t.L(q);
        s.pts[j] = t.x;
      }
    }
  };
  run(false);
  if (dual) run(true);
  if (P) s.gray = P->in_gray(q).has_value();
  return s;
}

BoundHint bound_hint(const CandidateSet& c, const BigReal& q) {
  MinimaSample s = minima_candidates(c, q, true);
  return {s.L[2], (*s.Ls)[2]};
}

MinimaSample minima_bruteforce(const RealVec3& u, const BigReal& q, const BoundHint& hint,
                               const BruteForceOptions& opt) {
  MinimaSample s;
  s.q = q;
  s.method = "bruteforce";
  const DVec du{u[1].to_double(), u[2].to_double()};
  const double qd = q.to_double();
  const double eq = std::exp(-qd);

  // primal: max(||x||, e^q |x.u|) <= lam
  {
    double lam = std::exp(hint.L3.to_double());
    double R = opt.safety * lam;
    if (R > opt.R_max) throw Error(Errc::TooLarge, "primal search radius " + std::to_string(R) + " exceeds the cap");
    double h = R * eq;
    double work = 3.15 * R * R * (2 * h + 1);
    if (work > opt.work_max) throw Error(Errc::TooLarge, "primal search exceeds the work cap");
    long Ri = static_cast<long>(std::floor(R));
    std::vector<SymVec> pts;
    std::vector<double> val;
    for (long x1 = -Ri; x1 <= Ri; ++x1)
      for (long x2 = -Ri; x2 <= Ri; ++x2) {
        double r2 = static_cast<double>(x1 * x1 + x2 * x2);
        if (r2 > R * R) continue;
        double c0 = -(x1 * du.u1 + x2 * du.u2);
        for (long x0 = static_cast<long>(std::ceil(c0 - h)); x0 <= static_cast<long>(std::floor(c0 + h)); ++x0) {
          if (x0 == 0 && x1 == 0 && x2 == 0) continue;
          // one of x, -x
          if (x0 < 0 || (x0 == 0 && (x1 < 0 || (x1 == 0 && x2 < 0)))) continue;
          double n = dnorm(x0, x1, x2);
          if (n > R) continue;
          double f = std::max(n, std::abs(x0 + x1 * du.u1 + x2 * du.u2) / eq);
          if (f > R) continue;
          pts.emplace_back(x0, x1, x2);
          val.push_back(f);
        }
      }
    std::vector<Scored> sc;
    for (size_t n = 0; n < pts.size(); ++n) sc.push_back({val[n], &pts[n], n});
    std::vector<size_t> pick = greedy_independent(sc);
    if (pick.size() < 3) throw Error(Errc::NoConvergence, "primal search found fewer than three independent points");
    finish(s, u, {pts[pick[0]], pts[pick[1]], pts[pick[2]]}, false);
  }

  // dual: max(||x ^ u||, e^-q ||x||) <= lam
  if (opt.dual) {
    if (!hint.Ls3) throw Error(Errc::TooLarge, "dual search needs an upper bound");
    double lam = std::exp(hint.Ls3->to_double());
    double R = opt.safety * lam;
    if (R > opt.R_max) throw Error(Errc::TooLarge, "dual search radius " + std::to_string(R) + " exceeds the cap");
    double X = R / eq;
    double work = (X + 1) * (2 * R + 1) * (2 * R + 1);
    if (!(work <= opt.work_max)) throw Error(Errc::TooLarge, "dual search exceeds the work cap");
    long Xi = static_cast<long>(std::floor(X));
    std::vector<SymVec> pts;
    std::vector<double> val;
    for (long x0 = 0; x0 <= Xi; ++x0) {
      double c1 = x0 * du.u1, c2 = x0 * du.u2;
      for (long x1 = static_cast<long>(std::ceil(c1 - R)); x1 <= static_cast<long>(std::floor(c1 + R)); ++x1)
        for (long x2 = static_cast<long>(std::ceil(c2 - R)); x2 <= static_cast<long>(std::floor(c2 + R)); ++x2) {
          if (x0 == 0 && (x1 < 0 || (x1 == 0 && x2 <= 0))) continue;
          double f = std::max(dwedge_norm(x0, x1, x2, du), dnorm(x0, x1, x2) * eq);
          if (f > R) continue;
          pts.emplace_back(x0, x1, x2);
          val.push_back(f);
        }
    }
    std::vector<Scored> sc;
    for (size_t n = 0; n < pts.size(); ++n) sc.push_back({val[n], &pts[n], n});
    std::vector<size_t> pick = greedy_independent(sc);
    if (pick.size() < 3) throw Error(Errc::NoConvergence, "dual search found fewer than three independent points");
    finish(s, u, {pts[pick[0]], pts[pick[1]], pts[pick[2]]}, true);
  }
  return s;
}

namespace {

// Inner product x^T G y for the quadratic form of a parametric body.
struct Form {
  RealVec3 u;
  BigReal E;  // e^{2q} primal, e^{-2q} dual
  BigReal uu;
  bool dual = false;

  RealVec3 real(const SymVec& x) const {
    mpfr_prec_t p = u[0].prec();
    return {BigReal(x.x0, p), BigReal(x.x1, p), BigReal(x.x2, p)};
  }
  BigReal operator()(const RealVec3& x, const RealVec3& y) const {
    BigReal xy = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    BigReal xu = x[0] * u[0] + x[1] * u[1] + x[2] * u[2];
    BigReal yu = y[0] * u[0] + y[1] * u[1] + y[2] * u[2];
    if (!dual) return xy + E * xu * yu;
    return (uu + E) * xy - xu * yu;
  }
};

void lll(std::array<SymVec, 3>& b, const Form& g) {
  const BigReal delta = BigReal::from_string("0.99", g.u[0].prec());
  auto gs = [&](std::array<std::array<BigReal, 3>, 3>& mu, std::array<BigReal, 3>& B) {
    std::array<RealVec3, 3> rb;
    for (int i = 0; i < 3; ++i) rb[i] = g.real(b[i]);
    std::array<std::array<BigReal, 3>, 3> r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < i; ++j) {
        r[i][j] = g(rb[i], rb[j]);
        for (int k = 0; k < j; ++k) r[i][j] = r[i][j] - mu[j][k] * r[i][k];
        mu[i][j] = r[i][j] / B[j];
      }
      B[i] = g(rb[i], rb[i]);
      for (int k = 0; k < i; ++k) B[i] = B[i] - mu[i][k] * r[i][k];
    }
  };
  std::array<std::array<BigReal, 3>, 3> mu;
  std::array<BigReal, 3> B;
  int k = 1;
  for (int iter = 0; k < 3; ++iter) {
    if (iter > 100000) throw Error(Errc::NoConvergence, "lattice reduction did not terminate");
    gs(mu, B);
    for (int j = k - 1; j >= 0; --j) {
      Int m = mu[k][j].round_z();
      if (m != 0) {
        b[k] = b[k] - m * b[j];
        gs(mu, B);
      }
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      k = std::max(k - 1, 1);
    }
  }
}

// All nonzero x (up to sign) with x^T G x <= T.
std::vector<SymVec> fincke_pohst(const std::array<SymVec, 3>& b, const Form& g, const BigReal& T, long max_points) {
  std::array<RealVec3, 3> rb;
  for (int i = 0; i < 3; ++i) rb[i] = g.real(b[i]);
  std::array<std::array<BigReal, 3>, 3> mu, r;
  std::array<BigReal, 3> B;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      r[i][j] = g(rb[i], rb[j]);
      for (int k = 0; k < j; ++k) r[i][j] = r[i][j] - mu[j][k] * r[i][k];
      mu[i][j] = r[i][j] / B[j];
    }
    B[i] = g(rb[i], rb[i]);
    for (int k = 0; k < i; ++k) B[i] = B[i] - mu[i][k] * r[i][k];
  }
  std::vector<SymVec> out;
  std::array<Int, 3> c;
  mpfr_prec_t p = T.prec();
  // level i: centre -sum_{j>i} mu[j][i] c_j, remaining budget
  std::function<void(int, const BigReal&)> rec = [&](int i, const BigReal& left) {
    BigReal centre = BigReal::zero(p);
    for (int j = i + 1; j < 3; ++j) centre = centre - mu[j][i] * BigReal(c[j], p);
    BigReal w = sqrt(left / B[i]);
    Int lo = (centre - w).floor_z(), hi = (centre + w).floor_z() + 1;
    for (Int v = lo; v <= hi; ++v) {
      BigReal d = BigReal(v, p) - centre;
      BigReal used = B[i] * d * d;
      if (used > left) continue;
      c[i] = v;
      if (i == 0) {
        SymVec x = c[0] * b[0] + c[1] * b[1] + c[2] * b[2];
        if (x.is_zero()) continue;
        if (sign_normal(x) != x) continue;
        out.push_back(x);
        if (static_cast<long>(out.size()) > max_points)
          throw Error(Errc::TooLarge, "reduced enumeration exceeds the point cap");
      } else {
        rec(i - 1, left - used);
      }
    }
  };
  rec(2, T);
  return out;
}

}  // namespace

long reduced_bits_needed(const BigReal& q, const BoundHint& hint) {
  double qd = std::abs(q.to_double());
  double l = std::abs(hint.L3.to_double());
  if (hint.Ls3) l = std::max(l, std::abs(hint.Ls3->to_double()));
  return static_cast<long>((2 * qd + 4 * l) / std::log(2.0)) + 96;
}

MinimaSample minima_reduced(const RealVec3& u, const BigReal& q, const BoundHint& hint, bool dual, long max_points) {
  mpfr_prec_t p = u[0].prec();
  long need = reduced_bits_needed(q, hint);
  if (p < need) throw Error(Errc::BadWindow, "u carries " + std::to_string(p) + " bits, q needs " + std::to_string(need));
  MinimaSample s;
  s.q = q.with_prec(p);
  s.method = "reduced";
  BigReal two(2L, p), slack = BigReal::from_string("1.000001", p);
  auto side = [&](bool dual_side, const BigReal& bound) {
    Form g;
    g.u = u;
    g.dual = dual_side;
    g.uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    g.E = exp(dual_side ? -(two * s.q) : two * s.q);
    std::array<SymVec, 3> b{SymVec(1, 0, 0), SymVec(0, 1, 0), SymVec(0, 0, 1)};
    lll(b, g);
    auto value = [&](const Trajectory& t) { return dual_side ? t.Ls(s.q) : t.L(s.q); };
    // the reduced basis itself bounds the third minimum
    BigReal cap = bound.with_prec(p), first, basis_max;
    for (int j = 0; j < 3; ++j) {
      BigReal v = value(Trajectory::make(b[j], u));
      if (j == 0 || v < first) first = v;
      if (j == 0 || v > basis_max) basis_max = v;
    }
    if (basis_max < cap) cap = basis_max;
    // grow the enumeration radius until three independent points fall inside it
    BigReal lg = first < cap ? first : cap, step = log(two);
    while (true) {
      BigReal lam = exp(lg);
      std::vector<SymVec> pts = fincke_pohst(b, g, two * lam * lam * slack, max_points);
      std::vector<BigReal> val;
      for (const auto& x : pts) val.push_back(value(Trajectory::make(x, u)));
      std::vector<size_t> ord(pts.size());
      for (size_t n = 0; n < ord.size(); ++n) ord[n] = n;
      std::stable_sort(ord.begin(), ord.end(), [&](size_t a, size_t b2) { return val[a] < val[b2]; });
      std::vector<SymVec> basis;
      std::vector<BigReal> got;
      for (size_t n : ord) {
        const SymVec& x = pts[n];
        bool indep = basis.empty()       ? true
                     : basis.size() == 1 ? !wedge(basis[0], x).is_zero()
                                         : det3(basis[0], basis[1], x) != 0;
        if (!indep) continue;
        basis.push_back(x);
        got.push_back(val[n]);
        if (basis.size() == 3) break;
      }
      if (basis.size() == 3 && !(got[2] > lg)) {
        for (int j = 0; j < 3; ++j) {
          if (dual_side) {
            if (!s.Ls) s.Ls = std::array<BigReal, 3>{};
            (*s.Ls)[j] = got[j];
          } else {
            s.L[j] = got[j];
            s.pts[j] = basis[j];
          }
        }
        return;
      }
      if (!(lg < cap)) throw Error(Errc::NoConvergence, "reduced enumeration found fewer than three independent points");
      lg = lg + step;
      if (lg > cap) lg = cap;
    }
  };
  side(false, hint.L3);
  if (dual) {
    if (!hint.Ls3) throw Error(Errc::BadWindow, "dual enumeration needs an upper bound");
    side(true, *hint.Ls3);
  }
  return s;
}

std::vector<BigReal> uniform_grid(const BigReal& lo, const BigReal& hi, long n) {
  std::vector<BigReal> g;
  if (n <= 0) return g;
  if (n == 1) return {lo};
  BigReal step = (hi - lo) / BigReal(n - 1, lo.prec());
  for (long j = 0; j < n; ++j) g.push_back(j == n - 1 ? hi : lo + BigReal(j, lo.prec()) * step);
  return g;
}

std::vector<BigReal> q_grid(const SystemBreakpoints& P, const BigReal& lo, const BigReal& hi, long n) {
  std::vector<BigReal> all = P.breakpoints();
  for (const auto& [j, ab] : P.I) {
    all.push_back(ab.first);
    all.push_back(ab.second);
  }
  for (auto& v : uniform_grid(lo, hi, n)) all.push_back(v);
  std::vector<BigReal> in;
  for (auto& v : all)
    if (!(v < lo) && !(v > hi)) in.push_back(v);
  std::sort(in.begin(), in.end());
  std::vector<BigReal> out;
  for (auto& v : in)
    if (out.empty() || v != out.back()) out.push_back(v);
  return out;
}

DualityReport duality_check(const RealVec3& u, const std::vector<BigReal>& grid, const CandidateSet& c,
                            const BruteForceOptions& opt) {
  DualityReport r;
  BruteForceOptions o = opt;
  o.dual = true;
  size_t half = grid.size() / 2;
  for (size_t n = 0; n < grid.size(); ++n) {
    MinimaSample s = minima_bruteforce(u, grid[n], bound_hint(c, grid[n]), o);
    for (int j = 0; j < 3; ++j) {
      double dev = std::abs((s.L[j] + (*s.Ls)[2 - j]).to_double());
      r.max_dev[j] = std::max(r.max_dev[j], dev);
      auto& w = n < half ? r.early : r.late;
      w[j] = std::max(w[j], dev);
    }
    ++r.n;
  }
  r.nongrowth = true;
  for (int j = 0; j < 3; ++j)
    if (r.late[j] > 2 * r.early[j] + 1e-9) r.nongrowth = false;
  return r;
}

}  // namespace sturmlab
