#include "sturmlab/matseq.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace sturmlab {

std::string MatrixSeed::label() const {
  std::ostringstream os;
  switch (family) {
    case Family::Roy: os << "roy(" << a << "," << b << "," << c << ")"; break;
    case Family::BL: os << "bl(" << a << "," << b << ";s1=" << c << ")"; break;
    case Family::Custom: os << "custom"; break;
  }
  return os.str();
}

Int trace_JM(const IntMat2& m) { return (IntMat2::J() * m).trace(); }

bool is_admissible(const IntMat2& w0, const IntMat2& w1, const IntMat2& N) {
  IntMat2 Nt = N.transpose();
  return (w1 * N).is_symmetric() && (w0 * Nt).is_symmetric() && (w1 * w0 * Nt).is_symmetric();
}

namespace {

void finish_seed(MatrixSeed& s) {
  s.TrJN = trace_JM(s.N);
  s.detN = s.N.det();
  s.proper_capable = s.TrJN != 0;
}

// one row of a symmetry constraint on N = [[n1,n2],[n3,n4]]
std::array<Int, 4> row_AN(const IntMat2& A) { return {-A.a21, A.a11, -A.a22, A.a12}; }
std::array<Int, 4> row_ANt(const IntMat2& A) { return {-A.a21, -A.a22, A.a11, A.a12}; }

}  // namespace

IntMat2 solve_admissibility(const IntMat2& w0, const IntMat2& w1) {
  if (w0.det() == 0 || w1.det() == 0) throw Error(Errc::DegenerateSeed, "seed matrix is singular");
  std::array<std::array<mpq_class, 4>, 3> M;
  const std::array<std::array<Int, 4>, 3> rows = {row_AN(w1), row_ANt(w0), row_ANt(w1 * w0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) M[i][j] = rows[i][j];

  // reduced row echelon form
  std::array<int, 4> pivot_of_col{-1, -1, -1, -1};
  int r = 0;
  for (int col = 0; col < 4 && r < 3; ++col) {
    int piv = -1;
    for (int i = r; i < 3; ++i)
      if (M[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[r], M[piv]);
    mpq_class inv = 1 / M[r][col];
    for (int j = 0; j < 4; ++j) M[r][j] *= inv;
    for (int i = 0; i < 3; ++i) {
      if (i == r || M[i][col] == 0) continue;
      mpq_class f = M[i][col];
      for (int j = 0; j < 4; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_of_col[col] = r;
    ++r;
  }
  int dim = 4 - r;
  if (dim == 0) throw Error(Errc::NoAdmissibleN, "only the zero matrix satisfies the symmetry conditions");
  if (dim >= 2) throw Error(Errc::DegenerateSeed, "solution space has dimension " + std::to_string(dim));

  int free_col = 0;
  while (pivot_of_col[free_col] >= 0) ++free_col;
  std::array<mpq_class, 4> v;
  for (int col = 0; col < 4; ++col) {
    if (col == free_col) v[col] = 1;
    else if (pivot_of_col[col] >= 0) v[col] = -M[pivot_of_col[col]][free_col];
    else v[col] = 0;
  }
  Int l = 1;
  for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::array<Int, 4> n;
  for (int i = 0; i < 4; ++i) {
    mpq_class t = v[i] * l;
    n[i] = t.get_num();
  }
  Int g = 0;
  for (auto& x : n) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& x : n) x /= g;
  for (auto& x : n) {
    if (x != 0) {
      if (x < 0)
        for (auto& y : n) y = -y;
      break;
    }
  }
  IntMat2 N(n[0], n[1], n[2], n[3]);
  if (N.det() == 0) throw Error(Errc::SingularN, "admissibility matrix is singular");
  return N;
}

MatrixSeed roy_family(long a, long b, long c) {
  if (a < 2 || b < 1 || c < b)
    throw Error(Errc::BadRoyTriple, "need a >= 2 and c >= b >= 1");
  MatrixSeed s;
  s.family = Family::Roy;
  s.a = a;
  s.b = b;
  s.c = c;
  s.w0 = IntMat2(1, b, a, a * (b + 1));
  s.w1 = IntMat2(1, c, a, a * (c + 1));
  IntMat2 Nt(-1 + a * (b + 1) * (c + 1), -a * (b + 1), -a * (c + 1), a);
  s.N = Nt.transpose();
  if (!is_admissible(s.w0, s.w1, s.N)) s.N = solve_admissibility(s.w0, s.w1);
  finish_seed(s);
  return s;
}

MatrixSeed bl_family(long a, long b, long s1_prime) {
  if (a == b) throw Error(Errc::EqualLetters, "letters must differ");
  if (a < 1 || b < 1 || s1_prime < 1) throw Error(Errc::BadSequence, "need a, b, s1' >= 1");
  MatrixSeed s;
  s.family = Family::BL;
  s.a = a;
  s.b = b;
  s.c = s1_prime;
  IntMat2 Mb(b, 1, 1, 0), Ma(a, 1, 1, 0);
  s.w0 = Mb;
  s.w1 = pow(Mb, static_cast<unsigned>(s1_prime - 1)) * Ma;
  IntMat2 P = Ma * Mb;
  Int d = P.det();
  IntMat2 adj = P.adj();
  s.printed_N = IntMat2(adj.a11 / d, adj.a12 / d, adj.a21 / d, adj.a22 / d);
  s.printed_N_admissible = is_admissible(s.w0, s.w1, *s.printed_N);
  s.N = solve_admissibility(s.w0, s.w1);
  finish_seed(s);
  return s;
}

MatrixSeed custom_seed(const IntMat2& w0, const IntMat2& w1) {
  MatrixSeed s;
  s.family = Family::Custom;
  s.w0 = w0;
  s.w1 = w1;
  s.N = solve_admissibility(w0, w1);
  finish_seed(s);
  return s;
}

MatrixSequence::MatrixSequence(MatrixSeed seed, SturmianProgram prog, size_t max_bits)
    : seed_(std::move(seed)), prog_(std::move(prog)), max_bits_(max_bits) {
  if (seed_.w0.det() == 0 || seed_.w1.det() == 0)
    throw Error(Errc::DegenerateSeed, "seed matrices must be invertible");
  w_ = {seed_.w0, seed_.w1};
  ladder_.emplace_back();  // k = 0 has no ladder
}

void MatrixSequence::grow(long k) {
  while (static_cast<long>(ladder_.size()) <= k) {
    long kk = static_cast<long>(ladder_.size());
    const IntMat2 wk = w_[kk];
    const IntMat2 wprev = w_[kk - 1];
    long s_next = prog_.s(kk + 1);
    std::vector<IntMat2> rungs;
    rungs.reserve(s_next + 2);
    rungs.push_back(wprev);
    for (long l = 1; l <= s_next + 1; ++l) {
      rungs.push_back(wk * rungs.back());
      size_t bits = mpz_sizeinbase(rungs.back().max_norm().get_mpz_t(), 2);
      if (bits > max_bits_)
        throw Error(Errc::Capacity, "entry size exceeds the bit cap at k = " + std::to_string(kk));
    }
    if (static_cast<long>(w_.size()) == kk + 1) w_.push_back(rungs[s_next]);
    ladder_.push_back(std::move(rungs));
  }
}

const IntMat2& MatrixSequence::w(long k) {
  if (k < 0) throw Error(Errc::BadIndex, "w_k with k < 0");
  if (k >= 2) grow(k - 1);
  return w_[k];
}

const IntMat2& MatrixSequence::ladder(long k, long l) {
  if (k < 1) throw Error(Errc::BadIndex, "ladder needs k >= 1");
  grow(k);
  const auto& r = ladder_[k];
  if (l < 0 || l >= static_cast<long>(r.size())) throw Error(Errc::BadIndex, "ladder rung out of range");
  return r[l];
}

IntMat2 MatrixSequence::N_k(long k) const { return (k % 2 == 0) ? seed_.N : seed_.N.transpose(); }

const BigReal& MatrixSequence::log_norm(long k) {
  const IntMat2& m = w(k);
  while (static_cast<long>(log_norm_.size()) <= k) {
    long kk = static_cast<long>(log_norm_.size());
    log_norm_.push_back(log_max_norm(kk == k ? m : w(kk)));
  }
  return log_norm_[k];
}

bool ordered_entries_shape(const IntMat2& m) {
  const Int& a = m.a11;
  Int lo = std::min(m.a12, m.a21), hi = std::max(m.a12, m.a21);
  return 1 <= a && a <= lo && hi <= m.a22;
}

GrowthReport check_mult_growth(MatrixSequence& seq, long k_max) {
  if (k_max < 2) throw Error(Errc::BadWindow, "k_max must be >= 2");
  GrowthReport rep;
  rep.k_max = k_max;
  rep.shape_w0 = ordered_entries_shape(seq.seed().w0);
  rep.shape_w1 = ordered_entries_shape(seq.seed().w1);
  bool first = true;
  for (long k = 1; k <= k_max; ++k) {
    long s_next = seq.prog().s(k + 1);
    BigReal lwk = log_max_norm(seq.w(k));
    for (long l = 1; l <= s_next + 1; ++l) {
      BigReal r = exp(log_max_norm(seq.ladder(k, l)) - lwk - log_max_norm(seq.ladder(k, l - 1)));
      double v = r.to_double();
      if (first) {
        rep.ratio_min = rep.ratio_max = v;
        first = false;
      }
      rep.ratio_min = std::min(rep.ratio_min, v);
      rep.ratio_max = std::max(rep.ratio_max, v);
      ++rep.count;
    }
  }
  return rep;
}

std::pair<BigReal, BigReal> roy_printed_bracket(long a, long b, long c, mpfr_prec_t prec) {
  BigReal la = log(BigReal(a, prec));
  return {la / log(BigReal(2 * a * (c + 1), prec)), la / log(BigReal(2 * a * (b + 1), prec))};
}

std::pair<BigReal, BigReal> roy_certified_bracket(long a, long b, long c, mpfr_prec_t prec) {
  BigReal la = log(BigReal(a, prec));
  return {la / log(BigReal(2 * a * (c + 1), prec)), la / log(BigReal(a * (b + 1), prec))};
}

DeltaReport delta_estimate(MatrixSequence& seq, long k_max) {
  if (k_max < 4) throw Error(Errc::BadWindow, "k_max must be >= 4");
  DeltaReport rep;
  rep.k_max = k_max;
  rep.exact_zero = true;
  for (long k = 0; k <= k_max; ++k) {
    Int d = abs(seq.det(k));
    if (d == 1) {
      rep.delta.emplace_back(0L);
      continue;
    }
    rep.exact_zero = false;
    if (seq.w(k).max_norm() <= 1)
      throw Error(Errc::DegenerateGrowth, "norm <= 1 at k = " + std::to_string(k));
    rep.delta.push_back(log_abs(d) / seq.log_norm(k));
  }
  for (long k = 0; k < k_max; ++k) rep.increments.push_back(abs(rep.delta[k + 1] - rep.delta[k]));
  rep.delta_hat = rep.delta.back();
  const MatrixSeed& s = seq.seed();
  if (s.family == Family::Roy) {
    rep.printed_bracket = roy_printed_bracket(s.a, s.b, s.c);
    rep.certified_bracket = roy_certified_bracket(s.a, s.b, s.c);
  }
  return rep;
}

const BigReal& HatW::at(long k) const {
  if (k < k_min() || k > k_max()) throw Error(Errc::BadIndex, "hat W index out of range: " + std::to_string(k));
  return log_w[k];
}

constexpr long kHatWFitExtra = 6;

HatW hat_w(MatrixSequence& seq, long k_max, long k0) {
  if (k_max < 2) throw Error(Errc::BadWindow, "k_max must be >= 2");
  bool auto_k0 = k0 < 0;
  if (auto_k0) {
    k0 = 2;
    while (k0 < k_max && (seq.w(k0 - 1).max_norm() <= 1 || seq.w(k0).max_norm() <= 1)) ++k0;
  }
  if (k0 < 1) throw Error(Errc::BadIndex, "anchor k0 must be >= 1");
  if (seq.w(k0 - 1).max_norm() <= 1 || seq.w(k0).max_norm() <= 1)
    throw Error(Errc::DegenerateGrowth, "anchor norms must exceed 1 at k0 = " + std::to_string(k0));
  long top = std::max(k_max, k0);
  long fit_hi = top + kHatWFitExtra;
  std::vector<std::pair<Int, Int>> basis(fit_hi + 1, {Int(0), Int(0)});
  basis[k0 - 1] = {1, 0};
  basis[k0] = {0, 1};
  for (long k = k0; k < fit_hi; ++k) {
    long s = seq.prog().s(k + 1);
    basis[k + 1] = {s * basis[k].first + basis[k - 1].first, s * basis[k].second + basis[k - 1].second};
  }
  // least squares for (log W_{k0-1}, log W_{k0}) against log ||w_k||, k0-1 <= k <= fit_hi
  mpfr_prec_t p = BigReal::kDefaultPrec;
  BigReal saa = BigReal::zero(p), sab = BigReal::zero(p), sbb = BigReal::zero(p), sat = BigReal::zero(p),
          sbt = BigReal::zero(p);
  for (long k = k0 - 1; k <= fit_hi; ++k) {
    BigReal a(basis[k].first, p), b(basis[k].second, p), t = seq.log_norm(k);
    saa = saa + a * a;
    sab = sab + a * b;
    sbb = sbb + b * b;
    sat = sat + a * t;
    sbt = sbt + b * t;
  }
  BigReal det = saa * sbb - sab * sab;
  BigReal B0 = (sat * sbb - sbt * sab) / det, B1 = (saa * sbt - sab * sat) / det;
  if (B0.sign() <= 0 || B1 <= B0) {
    if (auto_k0 && k0 < k_max) return hat_w(seq, k_max, k0 + 1);
    throw Error(Errc::DegenerateGrowth, "fitted log W is not increasing from k0 = " + std::to_string(k0));
  }
  HatW h;
  h.k0 = k0;
  h.fit_hi = fit_hi;
  h.log_w.assign(top + 1, BigReal(0L));
  h.basis.assign(basis.begin(), basis.begin() + top + 1);
  for (long k = k0 - 1; k <= top; ++k) {
    h.log_w[k] = BigReal(basis[k].first, p) * B0 + BigReal(basis[k].second, p) * B1;
    BigReal e = abs(h.log_w[k] - seq.log_norm(k));
    if (k == k0 - 1 || e > h.max_dev) h.max_dev = e;
  }
  return h;
}

}  // namespace sturmlab
