#include "sturmlab/approx.hpp"

#include <functional>

namespace sturmlab {

namespace {

SymVec sym_or_throw(const IntMat2& m) { return SymVec::from_matrix(m); }

bool divides(const Int& d, const Int& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int powi(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

const SymVec& ApproxSeq::y(long i) {
  if (i < -2) throw Error(Errc::BadIndex, "y_i needs i >= -2");
  auto it = y_.find(i);
  if (it != y_.end()) return it->second;
  IntMat2 m;
  if (i == -2) {
    m = seq_.w(0) * seq_.seed().N.transpose();
  } else if (i == -1) {
    m = seq_.w(1) * seq_.seed().N;
  } else {
    auto [k, l] = prog().locate(i);
    m = seq_.ladder(k, l + 1) * seq_.N_k(k);
  }
  return y_.emplace(i, sym_or_throw(m)).first->second;
}

const RatVec& ApproxSeq::z(long j) {
  if (j < -1) throw Error(Errc::BadIndex, "z_j needs j >= -1");
  auto it = z_.find(j);
  if (it != z_.end()) return it->second;
  long k = (j == -1) ? 0 : prog().locate(j).first;
  long a = prog().t(k) - 1;  // psi(t_{k+1})
  RatVec v(wedge(y(a), y(j)), seq_.det(k));
  return z_.emplace(j, std::move(v)).first->second;
}

SymVec ApproxSeq::z_int(long j) { return z(j).scaled_integral(seq_.det(2)); }

bool IdentityReport::all_ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

const IdentityCheck* IdentityReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

IdentityReport verify_identities(ApproxSeq& ap, long i_max) {
  const SturmianProgram& prog = ap.prog();
  MatrixSequence& ms = ap.mseq();
  if (i_max < prog.t(3)) throw Error(Errc::BadWindow, "i_max must be >= t_3");
  IdentityReport rep;
  rep.i_max = i_max;
  long K = 1;
  while (prog.t(K + 1) <= i_max) ++K;  // largest k with t_k <= i_max

  auto run = [&](const std::string& name, const std::function<void(const std::function<void(long, bool)>&)>& body) {
    IdentityCheck c;
    c.name = name;
    try {
      body([&](long idx, bool pass) {
        ++c.checked;
        if (!pass && c.ok) {
          c.ok = false;
          c.witness = idx;
        }
      });
    } catch (const Error& e) {
      if (c.ok) {
        c.ok = false;
        c.witness = -1000;
      }
    }
    rep.checks.push_back(c);
  };

  run("symmetric_y", [&](auto rec) {
    for (long i = -2; i <= i_max + 1; ++i) {
      bool ok = true;
      try {
        ap.y(i);
      } catch (const Error&) {
        ok = false;
      }
      rec(i, ok);
    }
  });

  run("commutation", [&](auto rec) {
    for (long k = 1; k <= K; ++k)
      rec(k, ms.w(k - 1) * ms.w(k) * ms.N_k(k + 1) == ms.w(k) * ms.w(k - 1) * ms.N_k(k));
  });

  run("prop35_1", [&](auto rec) {
    for (long k = 1; k <= K; ++k) {
      IntMat2 base = ap.y(prog.psi(prog.t(k))).to_matrix();
      for (long l = 0; l <= prog.s(k + 1); ++l) {
        long idx = prog.t(k) + l;
        rec(idx, ap.y(idx).to_matrix() == pow(ms.w(k), static_cast<unsigned>(l + 1)) * base);
      }
    }
  });

  run("prop35_2", [&](auto rec) {
    for (long k = 0; k <= K; ++k)
      for (long j = prog.t(k); j < prog.t(k + 1); ++j) rec(j, ap.y(j + 1).to_matrix() == ms.w(k) * ap.y(j).to_matrix());
  });

  run("prop35_3", [&](auto rec) {
    for (long k = 1; k <= K; ++k)
      for (long j = prog.t(k); j < prog.t(k + 1); ++j)
        rec(j, ap.y(j).to_matrix() == ms.w(k) * ap.y(prog.psi(j)).to_matrix());
  });

  run("prop35_4", [&](auto rec) {
    for (long j = 0; j <= i_max; ++j) {
      IntMat2 yj = ap.y(j).to_matrix();
      const SymVec& yp = ap.y(prog.psi(j));
      IntMat2 lhs = yp.det() * ap.y(j + 1).to_matrix();
      IntMat2 rhs = yj * yp.to_matrix().adj() * yj;
      rec(j, lhs == rhs);
    }
  });

  run("trace_recurrence", [&](auto rec) {
    for (long k = 1; k <= K; ++k) {
      Int tr = ms.tr(k), de = ms.det(k);
      for (long l = 2; l <= prog.s(k + 1) + 1; ++l)
        rec(k, ms.ladder(k, l).trace() == tr * ms.ladder(k, l - 1).trace() - de * ms.ladder(k, l - 2).trace());
    }
  });

  run("trace_congruence", [&](auto rec) {
    for (long k = 1; k <= K; ++k) {
      Int tr = ms.tr(k), de = abs(ms.det(k));
      Int base = ms.ladder(k, 1).trace();
      for (long l = 1; l <= prog.s(k + 1) + 1; ++l) {
        Int diff = ms.ladder(k, l).trace() - powi(tr, static_cast<unsigned long>(l - 1)) * base;
        rec(k, divides(de, diff));
      }
    }
  });

  run("y_recurrence", [&](auto rec) {
    for (long k = 1; k <= K; ++k) {
      Int tr = ms.tr(k), de = ms.det(k);
      for (long l = 0; l < prog.s(k + 1); ++l) {
        long i = prog.t(k) + l;
        if (i > i_max) break;
        rec(i, ap.y(i + 1) == tr * ap.y(i) - de * ap.y(prog.psi(i)));
      }
    }
  });

  run("y_recurrence_bis", [&](auto rec) {
    for (long k = 2; k <= K; ++k) {
      long i = prog.t(k) - 1;
      rec(k, ap.y(prog.t(k)) == ms.tr(k - 1) * ap.y(i) - ms.det(k - 1) * ap.y(prog.psi(i)));
    }
  });

  run("y_wedge_ladder", [&](auto rec) {
    for (long k = 1; k <= K; ++k) {
      long tk = prog.t(k);
      SymVec base = wedge(ap.y(prog.psi(tk)), ap.y(tk));
      for (long l = 0; l < prog.s(k + 1); ++l) {
        Int f = powi(ms.det(k), static_cast<unsigned long>(l + 1));
        rec(tk + l, wedge(ap.y(tk + l), ap.y(tk + l + 1)) == f * base);
      }
    }
  });

  run("z_recurrence_1", [&](auto rec) {
    for (long k = 1; k <= K; ++k) {
      long tk = prog.t(k);
      const SymVec& a = ap.y(prog.psi(prog.t(k + 1)));
      for (long l = 0; l < prog.s(k + 1) - 1; ++l) {
        long j = tk + l;
        if (j + 1 > i_max) break;
        RatVec rhs = ms.tr(k) * ap.z(j) - RatVec(wedge(a, ap.y(prog.psi(j))));
        rec(j + 1, ap.z(j + 1) == rhs);
      }
    }
  });

  run("z_recurrence_2", [&](auto rec) {
    for (long k = 2; k + 1 <= K; ++k) {
      long tk = prog.t(k);
      RatVec rhs = ms.tr(k - 1) * ap.z(tk - 1) - RatVec(wedge(ap.y(prog.psi(tk)), ap.y(prog.psi(tk - 1))));
      rec(prog.t(k + 1), ap.z(prog.t(k + 1)) == rhs);
    }
  });

  run("det_y", [&](auto rec) {
    for (long k = 0; k <= K; ++k) {
      long tk = prog.t(k);
      Int lhs = det3(ap.y(tk - 1), ap.y(tk), ap.y(tk + 1));
      Int rhs = -ms.det(k) * ap.y(tk).det() * trace_JM(ms.N_k(k + 1));
      rec(k, lhs == rhs);
    }
  });

  run("det_y_sign_corrected", [&](auto rec) {
    for (long k = 0; k <= K; ++k) {
      long tk = prog.t(k);
      Int lhs = det3(ap.y(tk - 1), ap.y(tk), ap.y(tk + 1));
      rec(k, lhs == ms.det(k) * ap.y(tk).det() * trace_JM(ms.N_k(k + 1)));
    }
  });

  run("y_independent", [&](auto rec) {
    if (ms.seed().TrJN == 0) return;
    for (long k = 0; k <= K; ++k) {
      long tk = prog.t(k);
      rec(k, det3(ap.y(tk - 1), ap.y(tk), ap.y(tk + 1)) != 0);
    }
  });

  run("z_wedge", [&](auto rec) {
    for (long k = 0; k + 1 <= K; ++k) {
      long tk = prog.t(k);
      Int f = ms.N_k(k).det() * trace_JM(ms.N_k(k + 1));
      for (long l = 0; l < prog.s(k + 1); ++l)
        rec(tk + l, wedge(ap.z(prog.t(k + 1)), ap.z(tk + l)) == RatVec(f * ap.y(tk + l)));
    }
  });

  run("z_wedge_sign_corrected", [&](auto rec) {
    for (long k = 0; k + 1 <= K; ++k) {
      long tk = prog.t(k);
      Int f = -ms.N_k(k).det() * trace_JM(ms.N_k(k + 1));
      for (long l = 0; l < prog.s(k + 1); ++l)
        rec(tk + l, wedge(ap.z(prog.t(k + 1)), ap.z(tk + l)) == RatVec(f * ap.y(tk + l)));
    }
  });

  run("z_integral", [&](auto rec) {
    for (long j = -1; j <= i_max; ++j) {
      bool ok = true;
      try {
        ap.z_int(j);
      } catch (const Error&) {
        ok = false;
      }
      rec(j, ok);
    }
  });

  return rep;
}

bool ContentReport::all_ok() const {
  for (const auto& r : rows)
    if (!r.y_divides_detN || !r.z_integral || !r.z_divides_bound) return false;
  return true;
}

bool cor44_hypotheses(MatrixSequence& seq) {
  Int g;
  for (long l = 0; l <= seq.prog().s(2) + 1; ++l) {
    const IntMat2& m = seq.ladder(1, l);
    if (gcd(m.trace(), m.det()) != 1) return false;
  }
  return gcd(seq.tr(1), seq.det(1)) == 1;
}

ContentReport contents_report(ApproxSeq& ap, long i_max) {
  if (i_max < 0) throw Error(Errc::BadWindow, "i_max must be >= 0");
  MatrixSequence& ms = ap.mseq();
  ContentReport rep;
  Int dw2 = ms.det(2), dN = ms.seed().detN;
  rep.bound = dw2 * dw2 * dN * dN * abs(ms.seed().TrJN);
  rep.cor44_hypotheses = cor44_hypotheses(ms);
  rep.max_content_y = 0;
  for (long i = -1; i <= i_max; ++i) {
    ContentRow r;
    r.i = i;
    r.content_y = content(ap.y(i));
    r.y_divides_detN = divides(r.content_y, dN);
    if (r.content_y > rep.max_content_y) rep.max_content_y = r.content_y;
    try {
      SymVec zi = ap.z_int(i);
      r.z_integral = true;
      r.content_z = content(zi);
      r.z_divides_bound = divides(r.content_z, rep.bound);
    } catch (const Error&) {
      r.z_integral = false;
      r.z_divides_bound = false;
      r.content_z = 0;
    }
    rep.rows.push_back(r);
  }
  return rep;
}

std::vector<Int> cf_expand(Int num, Int den) {
  if (den == 0) throw Error(Errc::ZeroObject, "continued fraction of x/0");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::vector<Int> a;
  while (den != 0) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    a.push_back(q);
    Int r = num - q * den;
    num = den;
    den = r;
  }
  return a;
}

GrayFan gray_fan(ApproxSeq& ap, long i) {
  const SturmianProgram& prog = ap.prog();
  if (!prog.all_ones()) throw Error(Errc::FibonacciOnly, "gray fans need the all-ones program");
  if (i < 2) throw Error(Errc::BadIndex, "gray fans need i >= 2");
  MatrixSequence& ms = ap.mseq();
  GrayFan g;
  g.i = i;
  g.t_next = ms.tr(i + 1);
  g.d_next = ms.det(i + 1);
  g.d_i = ms.det(i);
  g.d_i2 = ms.det(i + 2);
  Int dw2 = ms.det(2), dN = ms.seed().detN;
  g.lambda = dw2 * dw2 * dN * dN * abs(ms.seed().TrJN);

  const SymVec& yi = ap.y(i);
  const SymVec& yim2 = ap.y(i - 2);
  const SymVec& yi1 = ap.y(i + 1);
  std::vector<Int> a = cf_expand(g.t_next, g.d_next);

  Int p_prev = 0, q_prev = 1;  // m = -2
  Int p = 1, q = 0;            // m = -1
  g.pts.push_back({-1, 0, p, q, yi, content(yi), 0, 0});
  for (size_t m = 0; m < a.size(); ++m) {
    Int pn = a[m] * p + p_prev, qn = a[m] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    SymVec x = p * yi - q * yim2;
    g.pts.push_back({static_cast<long>(m), a[m], p, q, x, content(x), 0, 0});
  }
  for (auto& pt : g.pts) {
    pt.alpha = g.d_i * (g.d_next * pt.p - g.t_next * pt.q);
    pt.beta = g.d_i * pt.q;
  }

  const SymVec& xr = g.pts.back().x;
  g.endpoints_ok = g.pts.front().x == yi && (xr == yi1 || xr == -yi1);

  g.recurrence_ok = true;
  for (size_t k = 2; k < g.pts.size(); ++k)
    if (g.pts[k].x != g.pts[k].a * g.pts[k - 1].x + g.pts[k - 2].x) g.recurrence_ok = false;

  RatVec dz = g.d_i * ap.z(i + 1);
  RatVec mdz = Int(-1) * dz;
  g.wedge_ok = true;
  g.content_product_ok = true;
  g.content_gcd_ok = true;
  g.content_product_wedge_ok = true;
  Int cy = content(yi);
  for (size_t k = 0; k + 1 < g.pts.size(); ++k) {
    RatVec w(wedge(g.pts[k].x, g.pts[k + 1].x));
    if (w != dz && w != mdz) g.wedge_ok = false;
    const Int& c0 = g.pts[k].content;
    const Int& c1 = g.pts[k + 1].content;
    if (!divides(c0 * c1, g.d_i)) g.content_product_ok = false;
    if (!divides(c0 * c1, content(wedge(yim2, yi)))) g.content_product_wedge_ok = false;
    if (!divides(gcd(c0, c1), cy)) g.content_gcd_ok = false;
  }

  g.decomposition_ok = true;
  for (const auto& pt : g.pts) {
    if (g.d_i2 * pt.x != pt.alpha * yi + pt.beta * yi1) g.decomposition_ok = false;
    if (!divides(pt.content, g.lambda * pt.alpha) || !divides(pt.content, g.lambda * pt.beta))
      g.decomposition_ok = false;
  }
  return g;
}

}  // namespace sturmlab
