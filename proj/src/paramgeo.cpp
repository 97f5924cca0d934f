#include "sturmlab/paramgeo.hpp"

#include <algorithm>
#include <cmath>

#include "sturmlab/sturm.hpp"

namespace sturmlab {

namespace {

RealVec3 to_real(const SymVec& v, mpfr_prec_t p) { return {BigReal(v.x0, p), BigReal(v.x1, p), BigReal(v.x2, p)}; }

BigReal max2(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

// Two-line function: max or min of two lines.
struct HatFn {
  Line l0, l1;
  bool is_max;
  Comp comp;
  const Line& active(const LogBasis& b, const BigReal& q) const {
    BigReal v0 = l0.at(b, q), v1 = l1.at(b, q);
    if (is_max) return v1 > v0 ? l1 : l0;
    return v1 < v0 ? l1 : l0;
  }
};

}  // namespace

Trajectory Trajectory::make(const SymVec& x, const RealVec3& u) {
  if (x.is_zero()) throw Error(Errc::ZeroObject, "trajectory of the zero point");
  mpfr_prec_t p = u[0].prec();
  RealVec3 r = to_real(x, p);
  Trajectory t;
  t.x = x;
  t.log_norm = log_euclid_norm(x, p);
  BigReal d = r[0] * u[0] + r[1] * u[1] + r[2] * u[2];
  t.log_dot = d.is_zero() ? BigReal::inf(-1, p) : log(abs(d));
  BigReal w0 = r[1] * u[2] - r[2] * u[1], w1 = r[2] * u[0] - r[0] * u[2], w2 = r[0] * u[1] - r[1] * u[0];
  BigReal n2 = w0 * w0 + w1 * w1 + w2 * w2;
  t.log_wedge = n2.is_zero() ? BigReal::inf(-1, p) : log(n2) / BigReal(2L, p);
  t.ln = t.log_norm.to_double();
  t.ld = t.log_dot.to_double();
  t.lw = t.log_wedge.to_double();
  return t;
}

BigReal Trajectory::L(const BigReal& q) const { return max2(log_norm, log_dot + q); }
BigReal Trajectory::Ls(const BigReal& q) const { return max2(log_wedge, log_norm - q); }

std::pair<BigReal, BigReal> traj_eval(const SymVec& x, const RealVec3& u, const BigReal& q) {
  Trajectory t = Trajectory::make(x, u);
  return {t.L(q), t.Ls(q)};
}

BigReal Line::at(const LogBasis& b, const BigReal& q) const {
  BigReal v = a.eval(b);
  if (slope != 0) v = v + BigReal(static_cast<long>(slope), q.prec()) * q;
  return v;
}

const char* comp_name(Comp c) {
  switch (c) {
    case Comp::TopZ: return "L_top";
    case Comp::DualY: return "-L*_next";
    case Comp::NextZ: return "L_next";
  }
  return "?";
}

SystemBreakpoints predicted_system(MatrixSequence& seq, long k_lo, long k_hi, const BigReal& delta,
                                   const std::string& delta_source, long k0) {
  if (k_lo < 2 || k_hi < k_lo) throw Error(Errc::BadWindow, "need 2 <= k_lo <= k_hi");
  const SturmianProgram& prog = seq.prog();
  SystemBreakpoints S;
  S.k_lo = k_lo;
  S.k_hi = k_hi;
  S.delta_source = delta_source;
  HatW h = hat_w(seq, k_hi + 2, k0);
  S.k0 = h.k0;
  mpfr_prec_t prec = std::max(delta.prec(), h.at(h.k0).prec());
  S.basis = {h.at(h.k0 - 1).with_prec(prec), h.at(h.k0).with_prec(prec), delta.with_prec(prec)};
  CFQuantities cq = quantities(prog, 64, prec);
  S.threshold = cq.sigma / (BigReal(1L, prec) + cq.sigma);
  S.delta_proper = delta < S.threshold;

  long top = k_hi + 2;
  S.logW.assign(top + 1, LogForm{});
  S.logW[S.k0 - 1] = LogForm::B0();
  S.logW[S.k0] = LogForm::B1();
  for (long k = S.k0; k < top; ++k) S.logW[k + 1] = Int(prog.s(k + 1)) * S.logW[k] + S.logW[k - 1];
  for (long k = S.k0 - 1; k >= 1; --k) S.logW[k - 1] = S.logW[k + 1] - Int(prog.s(k + 1)) * S.logW[k];

  long i_lo = prog.t(k_lo) - 1, i_hi = prog.t(k_hi + 1);
  for (long i = i_lo; i <= i_hi + 1; ++i) {
    auto [k, l] = prog.locate(i);
    IndexData d;
    d.i = i;
    d.k = k;
    d.l = l;
    const LogForm& Wk = S.logW[k];
    const LogForm& Wk1 = S.logW[k - 1];
    d.logY = Int(l + 1) * Wk + Wk1;
    d.logZ = Int(l) * Wk + Wk1;
    d.logEs = scale(-1, 1, d.logY);
    d.logE = scale(-(l + 1) - 1, l + 1, Wk) + scale(-1, 1, Wk1);
    d.q = scale(2, -1, d.logY);
    d.c = d.q + Wk;
    d.qv = S.val(d.q);
    d.cv = S.val(d.c);
    S.idx[i] = d;
  }

  auto hatL = [&](long j, Comp c) {
    const IndexData& d = S.idx.at(j);
    return HatFn{{d.logZ, 0}, {d.logE, 1}, true, c};
  };
  auto negHatLs = [&](long j) {
    const IndexData& d = S.idx.at(j);
    return HatFn{{-d.logEs, 0}, {-d.logY, 1}, false, Comp::DualY};
  };

  BigReal rel_eps = BigReal(1L, prec);
  mpfr_mul_2si(rel_eps.get(), rel_eps.get(), -static_cast<long>(prec) + 24, MPFR_RNDN);

  for (long i = i_lo; i <= prog.t(k_hi + 1) - 2; ++i) {
    long K = prog.locate(i + 1).first;
    std::array<HatFn, 3> fn{hatL(prog.t(K + 1), Comp::TopZ), negHatLs(i + 1), hatL(i + 1, Comp::NextZ)};
    const IndexData& di = S.idx.at(i);
    const IndexData& dn = S.idx.at(i + 1);

    std::vector<std::pair<BigReal, LogForm>> pts;
    pts.push_back({di.cv, di.c});
    std::vector<Line> lines;
    for (const auto& f : fn) {
      lines.push_back(f.l0);
      lines.push_back(f.l1);
    }
    for (size_t x = 0; x < lines.size(); ++x)
      for (size_t y = x + 1; y < lines.size(); ++y) {
        if (lines[x].slope == lines[y].slope) continue;
        // a_x + s_x q = a_y + s_y q
        LogForm qq = lines[x].slope > lines[y].slope ? lines[y].a - lines[x].a : lines[x].a - lines[y].a;
        BigReal v = S.val(qq);
        if (v > di.cv && v < dn.cv) pts.push_back({v, qq});
      }
    pts.push_back({dn.cv, dn.c});
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<BigReal, LogForm>> uniq;
    for (auto& p : pts) {
      if (!uniq.empty()) {
        BigReal gap = p.first - uniq.back().first;
        BigReal scl = max2(abs(p.first), BigReal(1L, prec));
        if (gap <= rel_eps * scl) continue;
      }
      uniq.push_back(p);
    }
    for (size_t j = 0; j + 1 < uniq.size(); ++j) {
      Piece pc;
      pc.e0 = uniq[j].second;
      pc.e1 = uniq[j + 1].second;
      pc.q0 = uniq[j].first;
      pc.q1 = uniq[j + 1].first;
      pc.i = i;
      pc.k = K;
      BigReal mid = (pc.q0 + pc.q1) / BigReal(2L, prec);
      std::array<std::pair<BigReal, int>, 3> ord;
      std::array<Line, 3> act;
      for (int f = 0; f < 3; ++f) {
        act[f] = fn[f].active(S.basis, mid);
        ord[f] = {act[f].at(S.basis, mid), f};
      }
      std::stable_sort(ord.begin(), ord.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (int r = 0; r < 3; ++r) {
        pc.comp[r] = act[ord[r].second];
        pc.label[r] = fn[ord[r].second].comp;
      }
      S.pieces.push_back(pc);
    }
  }

  // I_{i+1}: where P3 = -hatL*_{i+1}
  for (const auto& pc : S.pieces) {
    if (pc.label[2] != Comp::DualY) continue;
    long j = pc.i + 1;
    if (!S.I.count(j)) {
      S.I[j] = {pc.q0, pc.q1};
      S.a_exact[j] = pc.e0;
      S.b_exact[j] = pc.e1;
    } else {
      S.I[j].second = pc.q1;
      S.b_exact[j] = pc.e1;
    }
  }
  for (const auto& [j, ab] : S.I) {
    auto prev = S.I.find(j - 1);
    if (prev != S.I.end()) S.gray[j] = {prev->second.second, ab.first};
  }
  return S;
}

const Piece* SystemBreakpoints::piece_at(const BigReal& q) const {
  if (pieces.empty() || q < pieces.front().q0 || q > pieces.back().q1) return nullptr;
  auto it = std::upper_bound(pieces.begin(), pieces.end(), q, [](const BigReal& v, const Piece& p) { return v < p.q0; });
  if (it == pieces.begin()) return &pieces.front();
  return &*std::prev(it);
}

std::array<BigReal, 3> SystemBreakpoints::P(const BigReal& q) const {
  const Piece* pc = piece_at(q);
  if (!pc) throw Error(Errc::OutOfRange, "q outside the span of P");
  return {pc->comp[0].at(basis, q), pc->comp[1].at(basis, q), pc->comp[2].at(basis, q)};
}

long SystemBreakpoints::k_of(const BigReal& q) const {
  long best = -1;
  for (const auto& [i, d] : idx)
    if (d.l == 0 && d.k >= k_lo && d.k <= k_hi + 1 && d.qv <= q) best = std::max(best, d.k);
  return best;
}

std::optional<long> SystemBreakpoints::in_I(const BigReal& q) const {
  for (const auto& [j, ab] : I)
    if (ab.first <= q && q <= ab.second) return j;
  return std::nullopt;
}

std::optional<long> SystemBreakpoints::in_gray(const BigReal& q) const {
  for (const auto& [j, ab] : gray)
    if (ab.first < q && q < ab.second) return j;
  return std::nullopt;
}

LogForm SystemBreakpoints::d(long k) const { return scale(3, -1, logW.at(k)) + scale(1, -1, logW.at(k - 1)); }

LogForm SystemBreakpoints::a_closed(long k) const { return Int(2) * logW.at(k) + logW.at(k - 1); }

std::vector<BigReal> SystemBreakpoints::breakpoints() const {
  std::vector<BigReal> out;
  for (const auto& pc : pieces) out.push_back(pc.q0);
  if (!pieces.empty()) out.push_back(pieces.back().q1);
  for (const auto& [i, d] : idx) {
    out.push_back(d.qv);
    out.push_back(d.cv);
  }
  for (long k = k_lo; k <= k_hi; ++k) out.push_back(val(d(k)));
  std::sort(out.begin(), out.end());
  std::vector<BigReal> uniq;
  for (auto& v : out)
    if (uniq.empty() || v != uniq.back()) uniq.push_back(v);
  return uniq;
}

std::vector<PLPiece> to_pl(const SystemBreakpoints& P) {
  std::vector<PLPiece> out;
  for (const auto& pc : P.pieces) {
    PLPiece p;
    p.q0 = pc.q0;
    p.q1 = pc.q1;
    for (int j = 0; j < 3; ++j) {
      p.v0[j] = pc.comp[j].at(P.basis, pc.q0);
      p.slope[j] = BigReal(static_cast<long>(pc.comp[j].slope), pc.q0.prec());
    }
    out.push_back(p);
  }
  return out;
}

ValidityReport validate_3system(const std::vector<PLPiece>& P, const BigReal& tol) {
  ValidityReport r;
  auto fail = [&](bool& flag, const std::string& what) {
    if (r.first_failure.empty()) r.first_failure = what;
    flag = false;
  };
  mpfr_prec_t p = tol.prec();
  BigReal zero(0L, p), one(1L, p);
  std::vector<const PLPiece*> live;
  for (const auto& pc : P)
    if (pc.q1 - pc.q0 > tol) live.push_back(&pc);
  r.pieces = static_cast<long>(live.size());

  auto slope_one = [&](const PLPiece& pc) {
    int idx = -1, n1 = 0;
    for (int j = 0; j < 3; ++j) {
      bool is0 = abs(pc.slope[j]) <= tol;
      bool is1 = abs(pc.slope[j] - one) <= tol;
      if (is1) {
        ++n1;
        idx = j;
      } else if (!is0) {
        return -2;
      }
    }
    return n1 == 1 ? idx : -2;
  };

  for (size_t n = 0; n < live.size(); ++n) {
    const PLPiece& pc = *live[n];
    std::array<BigReal, 3> v1;
    for (int j = 0; j < 3; ++j) v1[j] = pc.v0[j] + pc.slope[j] * (pc.q1 - pc.q0);
    for (const std::array<BigReal, 3>* v : {&pc.v0, static_cast<const std::array<BigReal, 3>*>(&v1)}) {
      const auto& a = *v;
      if (a[0] < -tol || a[1] < a[0] - tol || a[2] < a[1] - tol)
        fail(r.ordered, "ordering fails near q = " + pc.q0.to_fixed(6));
    }
    if (abs(pc.v0[0] + pc.v0[1] + pc.v0[2] - pc.q0) > tol || abs(v1[0] + v1[1] + v1[2] - pc.q1) > tol)
      fail(r.sum_ok, "sum differs from q near q = " + pc.q0.to_fixed(6));
    int s = slope_one(pc);
    if (s < 0) fail(r.slopes_ok, "slopes are not one 1 and two 0 near q = " + pc.q0.to_fixed(6));
    if (n + 1 < live.size()) {
      const PLPiece& nx = *live[n + 1];
      if (abs(nx.q0 - pc.q1) > tol) fail(r.continuous, "gap at q = " + pc.q1.to_fixed(6));
      for (int j = 0; j < 3; ++j)
        if (abs(nx.v0[j] - (v1[j] + pc.slope[j] * (nx.q0 - pc.q1))) > tol)
          fail(r.continuous, "jump at q = " + pc.q1.to_fixed(6));
      int t = slope_one(nx);
      if (s >= 0 && t >= 0 && s < t) {
        for (int j = s; j < t; ++j)
          if (abs(v1[j] - v1[j + 1]) > tol)
            fail(r.switch_ok, "switch condition fails at q = " + pc.q1.to_fixed(6));
      }
    }
  }
  return r;
}

StructureReport structure_checks(const SystemBreakpoints& P, const BigReal& tol) {
  StructureReport r;
  const auto& idx = P.idx;
  auto bad = [&](bool& flag, long i) {
    if (flag && r.witness < 0) r.witness = i;
    flag = false;
  };
  long first_piece_i = P.pieces.empty() ? 0 : P.pieces.front().i;
  long last_piece_i = P.pieces.empty() ? -1 : P.pieces.back().i;
  // t_{k0}
  long tk0 = -1;
  for (const auto& [i, d] : idx)
    if (d.k == P.k0 && d.l == 0) tk0 = i;
  for (const auto& [i, d] : idx) {
    auto nx = idx.find(i + 1);
    if (nx == idx.end()) continue;
    if (tk0 >= 0 && i >= tk0)
      if (!(d.qv < d.cv && d.cv < nx->second.qv && nx->second.qv < nx->second.cv)) bad(r.order_qc, i);
  }
  for (long i = first_piece_i; i <= last_piece_i; ++i) {
    const IndexData& d = idx.at(i);
    const IndexData& n = idx.at(i + 1);
    // -hatL*_i(c_i) = -hatL*_{i+1}(c_i) = -log E*_i
    if (P.val(d.c - d.logY) < P.val(-d.logEs)) bad(r.values_at_c, i);
    if (d.c - n.logY != -d.logEs) bad(r.values_at_c, i);
    if (P.val(-n.logEs) < P.val(-d.logEs)) bad(r.values_at_c, i);
    // hatL_i(c_i) = hatL_{psi^-1(i)}(c_i) = log Z_{psi^-1(i)}
    // psi^-1(i) = i + 1, except t_{k+1} - 1 -> t_{k+2}
    long pinv = -1;
    if (n.l != 0) {
      pinv = i + 1;
    } else {
      for (const auto& [j, dj] : idx)
        if (dj.l == 0 && dj.k == n.k + 1) pinv = j;
    }
    if (pinv >= 0 && idx.count(pinv)) {
      const IndexData& pd = idx.at(pinv);
      if (d.logE + d.c != pd.logZ) bad(r.values_at_c, i);
      if (P.val(d.logE + d.c) < P.val(d.logZ)) bad(r.values_at_c, i);
      if (P.val(pd.logE + d.c) > P.val(pd.logZ)) bad(r.values_at_c, i);
    }
  }
  for (const auto& pc : P.pieces) {
    LogForm s = pc.comp[0].a + pc.comp[1].a + pc.comp[2].a;
    if (!s.is_zero() || pc.comp[0].slope + pc.comp[1].slope + pc.comp[2].slope != 1) bad(r.sum_exact, pc.i);
  }
  std::optional<BigReal> prev;
  for (const auto& [i, d] : idx) {
    if (d.k < P.k0) continue;
    long tk1 = -1;
    for (const auto& [j, dj] : idx)
      if (dj.l == 0 && dj.k == d.k + 1) tk1 = j;
    if (tk1 < 0) continue;
    const IndexData& t = idx.at(tk1);
    BigReal q = d.qv;
    BigReal neg_ls = -max2(P.val(d.logEs), P.val(d.logY) - q);
    BigReal li = max2(P.val(d.logZ), P.val(d.logE) + q);
    BigReal lt = max2(P.val(t.logZ), P.val(t.logE) + q);
    BigReal g = neg_ls - max2(li, lt);
    if (g.sign() <= 0) bad(r.growth_positive, i);
    if (prev && !(g > *prev)) bad(r.growth_increasing, i);
    prev = g;
  }
  for (long i = first_piece_i; i <= last_piece_i; ++i)
    if (!P.I.count(i + 1)) bad(r.I_nonempty, i);

  auto t_index = [&](long k) -> const IndexData* {
    for (const auto& [j, dj] : idx)
      if (dj.l == 0 && dj.k == k) return &dj;
    return nullptr;
  };
  auto hatL = [&](const IndexData& d, const BigReal& q) { return max2(P.val(d.logZ), P.val(d.logE) + q); };
  auto negLs = [&](const IndexData& d, const BigReal& q) { return -max2(P.val(d.logEs), P.val(d.logY) - q); };
  auto le = [&](const BigReal& a, const BigReal& b) { return a <= b + tol; };
  auto lt = [&](const BigReal& a, const BigReal& b) { return a + tol < b; };
  for (long i = first_piece_i; i <= last_piece_i; ++i) {
    const IndexData& d = idx.at(i);
    const IndexData& n = idx.at(i + 1);
    const IndexData* top = t_index(n.k + 1);
    if (!top) continue;
    const BigReal &c0 = d.cv, &c1 = n.cv;
    bool ok;
    if (n.l != 0) {
      ok = lt(hatL(n, n.qv), negLs(n, n.qv)) && le(negLs(n, c0), hatL(n, c0)) && le(negLs(n, c1), hatL(n, c1)) &&
           lt(hatL(*top, c0), negLs(n, c0));
    } else {
      ok = le(hatL(n, c0), negLs(n, c0)) && le(negLs(n, c0), hatL(*top, c0)) && le(hatL(*top, c1), negLs(n, c1)) &&
           le(negLs(n, c1), hatL(n, c1));
    }
    if (!ok) bad(r.form_ok, i);
  }
  return r;
}

std::string ThreeSystemVerdict::reason() const {
  if (!conditions.valid()) return conditions.first_failure;
  if (!delta_proper) return "delta is not below sigma/(1+sigma)";
  if (!structure.form_ok) return "combined graph does not have the predicted shape at i = " + std::to_string(structure.witness);
  if (!structure.ok()) return "structure check fails at i = " + std::to_string(structure.witness);
  return "";
}

ThreeSystemVerdict three_system_verdict(const SystemBreakpoints& P, const BigReal& tol) {
  ThreeSystemVerdict v;
  v.conditions = validate_3system(to_pl(P), tol);
  v.structure = structure_checks(P, tol);
  v.delta_proper = P.delta_proper;
  return v;
}

ComparisonReport compare(const SystemBreakpoints& P, const std::vector<MinimaSample>& samples,
                         std::pair<long, long> early, std::pair<long, long> late) {
  ComparisonReport rep;
  rep.early.k_lo = early.first;
  rep.early.k_hi = early.second;
  rep.late.k_lo = late.first;
  rep.late.k_hi = late.second;
  for (const auto& s : samples) {
    if (!P.piece_at(s.q)) continue;
    long k = P.k_of(s.q);
    auto Pv = P.P(s.q);
    double d1 = abs(s.L[0] - Pv[0]).to_double();
    double d2 = abs(s.L[1] - Pv[1]).to_double();
    double d3 = abs(s.L[2] - Pv[2]).to_double();
    bool inI = P.in_I(s.q).has_value();
    bool gray = P.in_gray(s.q).has_value();
    for (auto* w : {&rep.early, &rep.late}) {
      if (k < w->k_lo || k > w->k_hi) continue;
      ++w->n;
      w->item1 = std::max(w->item1, d1);
      if (inI) {
        ++w->nI;
        w->item2_L2 = std::max(w->item2_L2, d2);
        w->item2_L3 = std::max(w->item2_L3, d3);
      }
    }
    if (gray && k >= early.first) {
      ++rep.n_gray;
      double c = std::max({(Pv[1] - s.L[1]).to_double(), (s.L[2] - Pv[2]).to_double(), 0.0});
      rep.C_gray = std::max(rep.C_gray, c);
    }
  }
  rep.item1_nongrowth = rep.early.n > 0 && rep.late.n > 0 && rep.late.item1 <= 2 * rep.early.item1;
  rep.item2_nongrowth = rep.early.nI > 0 && rep.late.nI > 0 && rep.late.item2_L2 <= 2 * rep.early.item2_L2 &&
                        rep.late.item2_L3 <= 2 * rep.early.item2_L3;
  return rep;
}

}  // namespace sturmlab
