#include "sturmlab/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "sturmlab/error.hpp"
#include "sturmlab/matseq.hpp"

namespace sturmlab {

namespace {

BigReal one(const BigReal& like) { return BigReal(1L, like.prec()); }

// Keeps intervals monotone under a decreasing map.
ExpValue map_value(const ExpValue& v, BigReal (*f)(const BigReal&), bool decreasing) {
  if (!v.known()) return v;
  ExpValue r = v;
  BigReal a = f(v.lo), b = f(v.hi);
  if (decreasing) std::swap(a, b);
  r.lo = a;
  r.hi = b;
  return r;
}

BigReal inv_plus_one(const BigReal& x) { return one(x) / (x + one(x)); }           // 1/(x+1)
BigReal frac_plus_one(const BigReal& x) { return x / (x + one(x)); }               // x/(x+1)
BigReal inv_minus_one(const BigReal& p) { return one(p) / p - one(p); }            // 1/p - 1
BigReal frac_minus_one(const BigReal& p) { return p / (one(p) - p); }              // p/(1-p)

void check_range(const ExpValue& v, const BigReal& lo, const BigReal& hi, const char* name) {
  if (!v.known()) return;
  BigReal tol(1e-30, v.lo.prec());
  if (v.lo < lo - tol || v.hi > hi + tol)
    throw Error(Errc::OutOfRange, std::string(name) + " = " + v.str() + " outside [" + lo.to_fixed(6) + ", " +
                                      (hi.is_inf() ? std::string("inf") : hi.to_fixed(6)) + "]");
}

BigReal first_term(const BigReal& sigma, const BigReal& delta) {
  BigReal s1 = (one(delta) - delta) * (one(sigma) + sigma);
  return s1 / ((BigReal(2L, delta.prec()) - delta) * (one(sigma) + sigma) + one(sigma));
}

}  // namespace

ExpValue ExpValue::exact(const BigReal& v) {
  ExpValue r;
  r.kind = Kind::Exact;
  r.lo = r.hi = v;
  return r;
}

ExpValue ExpValue::interval(const BigReal& lo, const BigReal& hi) {
  if (lo == hi) return exact(lo);
  ExpValue r;
  r.kind = Kind::Interval;
  r.lo = lo;
  r.hi = hi;
  return r;
}

ExpValue ExpValue::empirical(const BigReal& v, const std::string& window, bool low_confidence) {
  ExpValue r;
  r.kind = Kind::Empirical;
  r.lo = r.hi = v;
  r.window = window;
  r.low_confidence = low_confidence;
  return r;
}

BigReal ExpValue::value() const {
  if (kind == Kind::Interval) return (lo + hi) / BigReal(2L, lo.prec());
  return lo;
}

std::string ExpValue::kind_name() const {
  switch (kind) {
    case Kind::Exact: return "exact";
    case Kind::Interval: return "interval";
    case Kind::Empirical: return "empirical";
    default: return "unknown";
  }
}

std::string ExpValue::str(int digits) const {
  switch (kind) {
    case Kind::Exact: return lo.to_fixed(digits);
    case Kind::Interval: return "[" + lo.to_fixed(digits) + ", " + hi.to_fixed(digits) + "]";
    case Kind::Empirical:
      return lo.to_fixed(digits) + " (" + window + (low_confidence ? ", low confidence" : "") + ")";
    default: return "?";
  }
}

BigReal theta(const BigReal& sigma_prime, bool sigma_prime_infinite, const BigReal& tau, const BigReal& delta) {
  BigReal two(2L, delta.prec());
  BigReal t1 = sigma_prime_infinite ? one(delta) / (two - delta)
                                    : (one(delta) + sigma_prime) / ((two - delta) * (two + sigma_prime));
  BigReal t2 = one(delta) / (two + (one(delta) - delta) * (one(tau) + tau));
  return min(t1, t2);
}

std::optional<BigReal> psi2_crossover(const BigReal& sigma, const BigReal& tau, const BigReal& sigma_prime,
                                      bool sigma_prime_infinite) {
  BigReal thr = sigma / (one(sigma) + sigma);
  auto exact_at = [&](const BigReal& d) {
    return first_term(sigma, d) >= theta(sigma_prime, sigma_prime_infinite, tau, d);
  };
  BigReal lo = BigReal::zero(sigma.prec());
  if (!exact_at(lo)) return std::nullopt;
  if (exact_at(thr)) return thr;
  BigReal hi = thr;
  for (int it = 0; it < 200; ++it) {
    BigReal mid = (lo + hi) / BigReal(2L, sigma.prec());
    if (exact_at(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

ExponentSet closed_form(const BigReal& sigma, const BigReal& delta, const BigReal& tau, const BigReal& sigma_prime,
                        bool sigma_prime_infinite) {
  BigReal thr = sigma / (one(sigma) + sigma);
  if (delta.sign() < 0 || delta >= thr)
    throw Error(Errc::ImproperDelta, "delta = " + delta.to_fixed(6) + " not in [0, " + thr.to_fixed(6) + ")");
  const BigReal o = one(delta), two(2L, delta.prec());
  const BigReal u = o - delta;     // 1 - δ
  const BigReal v = two - delta;   // 2 - δ
  const BigReal s1 = o + sigma;    // 1 + σ
  const BigReal us = u * s1;       // (1-δ)(1+σ)

  ExponentSet e;
  e.sigma = sigma;
  e.delta = delta;
  e.tau = tau;
  e.sigma_prime = sigma_prime;
  e.sigma_prime_infinite = sigma_prime_infinite;

  e.psi1_lo = ExpValue::exact(sigma / (v * s1));
  e.psi1_hi = ExpValue::exact(o / (us + two));
  e.psi2_hi = ExpValue::exact(o / (two + sigma));
  e.psi3_lo = ExpValue::exact(us / (o + two * us));

  bool lambda_exact = delta <= h_of_sigma(sigma);
  BigReal p3 = u / v, p3_alt = o / (v + sigma);
  e.psi3_hi = lambda_exact ? ExpValue::exact(p3) : ExpValue::interval(p3, max(p3, p3_alt));

  BigReal th = theta(sigma_prime, sigma_prime_infinite, tau, delta);
  e.crossover = psi2_crossover(sigma, tau, sigma_prime, sigma_prime_infinite);
  if (e.crossover && delta <= *e.crossover) e.psi2_lo = ExpValue::exact(th);
  else e.psi2_lo = ExpValue::interval(min(first_term(sigma, delta), th), th);

  e.omega2 = ExpValue::exact(v / sigma + u);
  e.omega2_hat = ExpValue::exact(o + us);
  e.lambda2_hat = ExpValue::exact(us / (o + us));
  BigReal l2 = u, l2_alt = o / (u + sigma);
  e.lambda2 = lambda_exact ? ExpValue::exact(l2) : ExpValue::interval(l2, max(l2, l2_alt));
  return e;
}

ExponentSet closed_form(const CFQuantities& q, const BigReal& delta) {
  return closed_form(q.sigma, delta, q.tau, q.sigma_prime, q.sigma_prime_infinite);
}

std::array<ExpValue, 4> to_parametric(const ExpValue& omega2, const ExpValue& omega2_hat, const ExpValue& lambda2_hat,
                                      const ExpValue& lambda2) {
  const mpfr_prec_t p = BigReal::kDefaultPrec;
  BigReal two(2L, p), half = BigReal(1L, p) / two, inf = BigReal::inf(1, p);
  check_range(omega2, two, inf, "omega2");
  check_range(omega2_hat, two, inf, "omega2_hat");
  check_range(lambda2_hat, half, BigReal(1L, p), "lambda2_hat");
  check_range(lambda2, half, inf, "lambda2");
  return {map_value(omega2, inv_plus_one, true), map_value(omega2_hat, inv_plus_one, true),
          map_value(lambda2_hat, frac_plus_one, false), map_value(lambda2, frac_plus_one, false)};
}

std::array<ExpValue, 4> to_standard(const ExpValue& psi1_lo, const ExpValue& psi1_hi, const ExpValue& psi3_lo,
                                    const ExpValue& psi3_hi) {
  const mpfr_prec_t p = BigReal::kDefaultPrec;
  BigReal zero = BigReal::zero(p), third = BigReal(1L, p) / BigReal(3L, p), half = BigReal(1L, p) / BigReal(2L, p);
  check_range(psi1_lo, zero, third, "psi1_lo");
  check_range(psi1_hi, zero, third, "psi1_hi");
  check_range(psi3_lo, third, half, "psi3_lo");
  check_range(psi3_hi, third, BigReal(1L, p), "psi3_hi");
  for (const ExpValue* v : {&psi1_lo, &psi1_hi})
    if (v->known() && v->lo.sign() <= 0) throw Error(Errc::OutOfRange, "psi1 must be positive");
  if (psi3_hi.known() && psi3_hi.hi >= BigReal(1L, p)) throw Error(Errc::OutOfRange, "psi3_hi must be below 1");
  return {map_value(psi1_lo, inv_minus_one, true), map_value(psi1_hi, inv_minus_one, true),
          map_value(psi3_lo, frac_minus_one, false), map_value(psi3_hi, frac_minus_one, false)};
}

BigReal jarnik_parametric_residual(const BigReal& psi3_lo, const BigReal& psi1_hi) {
  BigReal two(2L, psi3_lo.prec()), three(3L, psi3_lo.prec());
  return two * psi3_lo + two * psi1_hi - three * psi3_lo * psi1_hi - one(psi3_lo);
}

BigReal jarnik_residual(const BigReal& lambda2_hat, const BigReal& omega2_hat) {
  return lambda2_hat - (one(omega2_hat) - one(omega2_hat) / omega2_hat);
}

namespace {

long t_index(const SystemBreakpoints& P, long k) {
  for (const auto& [i, d] : P.idx)
    if (d.k == k && d.l == 0) return i;
  throw Error(Errc::BadWindow, "no index t_k for k = " + std::to_string(k));
}

const IndexData& index_at(const SystemBreakpoints& P, long i) {
  auto it = P.idx.find(i);
  if (it == P.idx.end()) throw Error(Errc::BadWindow, "no breakpoint data for i = " + std::to_string(i));
  return it->second;
}

struct Abscissas {
  std::vector<BigReal> q_t, d, a_t, b_t, c_t, q_t1, q_all, c_last;
};

Abscissas collect(const SystemBreakpoints& P, long k_lo, long k_hi) {
  if (k_lo > k_hi) throw Error(Errc::BadWindow, "empty k window");
  Abscissas A;
  for (long k = k_lo; k <= k_hi; ++k) {
    long t = t_index(P, k), t_next = t_index(P, k + 1);
    A.q_t.push_back(index_at(P, t).qv);
    A.c_t.push_back(index_at(P, t).cv);
    A.q_t1.push_back(index_at(P, t + 1).qv);
    A.c_last.push_back(index_at(P, t_next - 1).cv);
    for (long i = t; i < t_next; ++i) A.q_all.push_back(index_at(P, i).qv);
    A.d.push_back(P.val(P.d(k)));
    A.a_t.push_back(P.val(P.a_closed(k)));
    auto b = P.b_exact.find(t);
    if (b == P.b_exact.end()) throw Error(Errc::BadWindow, "no b_t for k = " + std::to_string(k));
    A.b_t.push_back(P.val(b->second));
  }
  return A;
}

const MinimaSample& lookup(const std::vector<MinimaSample>& samples, const BigReal& q) {
  double qd = q.to_double(), best = 1e300;
  const MinimaSample* hit = nullptr;
  for (const auto& s : samples) {
    double e = std::abs(s.q.to_double() - qd);
    if (e < best) best = e, hit = &s;
  }
  if (!hit || best > 1e-9 * std::max(1.0, std::abs(qd)))
    throw Error(Errc::BadWindow, "no sample at q = " + q.to_fixed(6));
  return *hit;
}

}  // namespace

std::vector<BigReal> empirical_abscissas(const SystemBreakpoints& P, long k_lo, long k_hi) {
  Abscissas A = collect(P, k_lo, k_hi);
  std::vector<BigReal> out;
  for (auto* v : {&A.q_t, &A.d, &A.a_t, &A.b_t, &A.c_t, &A.q_t1, &A.q_all, &A.c_last})
    out.insert(out.end(), v->begin(), v->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExponentSet empirical(const SystemBreakpoints& P, const std::vector<MinimaSample>& samples, long k_lo, long k_hi) {
  Abscissas A = collect(P, k_lo, k_hi);
  std::string window = "k=" + std::to_string(k_lo) + ".." + std::to_string(k_hi);
  bool low = k_lo == k_hi;

  auto ratio = [&](const BigReal& q, int j) {
    const MinimaSample& s = lookup(samples, q);
    return s.L[j] / s.q;
  };
  auto extremum = [&](std::initializer_list<const std::vector<BigReal>*> sets, int j, bool want_max) {
    std::optional<BigReal> best;
    for (auto* set : sets)
      for (const auto& q : *set) {
        BigReal r = ratio(q, j);
        if (!best || (want_max ? r > *best : r < *best)) best = r;
      }
    return ExpValue::empirical(*best, window, low);
  };

  ExponentSet e;
  e.sigma = e.tau = e.sigma_prime = BigReal::nan();
  e.delta = BigReal::nan();
  e.psi1_lo = extremum({&A.q_t}, 0, false);
  e.psi1_hi = extremum({&A.d}, 0, true);
  e.psi2_hi = extremum({&A.a_t}, 1, true);
  e.psi2_lo = extremum({&A.c_t, &A.q_t1, &A.d}, 1, false);
  e.psi3_lo = extremum({&A.b_t}, 2, false);
  e.psi3_hi = extremum({&A.q_all, &A.c_last}, 2, true);

  // 2x + 2p - 3xp = 1 solved for x = ψ̲₃
  const BigReal& p = e.psi1_hi.lo;
  e.psi3_lo_jarnik = (one(p) - BigReal(2L, p.prec()) * p) / (BigReal(2L, p.prec()) - BigReal(3L, p.prec()) * p);

  try {
    auto s = to_standard(e.psi1_lo, e.psi1_hi, e.psi3_lo, e.psi3_hi);
    e.omega2 = s[0];
    e.omega2_hat = s[1];
    e.lambda2_hat = s[2];
    e.lambda2 = s[3];
  } catch (const Error&) {
    // estimates outside the admissible ranges leave the standard side unknown
  }
  return e;
}

std::vector<std::array<BigReal, 4>> joint_curve(const BigReal& sigma, const BigReal& c_lo, long grid_n) {
  std::vector<std::array<BigReal, 4>> out;
  if (grid_n <= 0) return out;
  BigReal o = one(sigma), s1 = o + sigma;
  for (long n = 0; n < grid_n; ++n) {
    BigReal x = grid_n == 1 ? o
                            : (n == grid_n - 1 ? o
                                               : c_lo + (o - c_lo) * BigReal(n, sigma.prec()) /
                                                            BigReal(grid_n - 1, sigma.prec()));
    BigReal w = o + s1 * x;
    out.push_back({x, o - o / w, w / sigma, w});
  }
  return out;
}

std::vector<std::array<long, 3>> recipe_triples(long k_max) {
  std::vector<std::array<long, 3>> out;
  for (long k = 2; k <= k_max; ++k)
    for (long l = 1; l < k; ++l) out.push_back({1L << l, (1L << (k - l)) - 1, 1L << (k - l)});
  return out;
}

SweepReport omega2_sweep(const SturmianProgram& prog, const std::vector<std::array<long, 3>>& triples, long k_delta) {
  SweepReport R;
  CFQuantities cq = quantities(prog);
  R.sigma = cq.sigma;
  R.threshold = cq.sigma / (one(cq.sigma) + cq.sigma);
  auto omega = [&](const BigReal& d) {
    return (BigReal(2L, d.prec()) - d) / R.sigma + one(d) - d;
  };

  std::vector<std::pair<BigReal, BigReal>> cover;
  for (const auto& [a, b, c] : triples) {
    SweepRow row;
    row.a = a, row.b = b, row.c = c;
    try {
      MatrixSeed seed = roy_family(a, b, c);
      row.bracket = roy_certified_bracket(a, b, c);
      row.proper = row.bracket.second < R.threshold;
      row.omega2 = {omega(row.bracket.second), omega(row.bracket.first)};
      if (k_delta > 0) {
        MatrixSequence seq(seed, prog);
        BigReal d = delta_estimate(seq, k_delta).delta_hat;
        row.delta_hat = d;
        BigReal slack(1e-9);
        row.in_bracket = d >= row.bracket.first - slack && d <= row.bracket.second + slack;
      }
      if (row.bracket.first < R.threshold) cover.push_back({row.bracket.first, min(row.bracket.second, R.threshold)});
    } catch (const Error& err) {
      row.error = err.what();
    }
    R.rows.push_back(std::move(row));
  }

  // δ = 0 is realized by the Bugeaud-Laurent numbers.
  BigReal zero = BigReal::zero(R.threshold.prec());
  cover.push_back({zero, zero});
  std::sort(cover.begin(), cover.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  BigReal reach = zero, gap = zero;
  for (const auto& [lo, hi] : cover) {
    if (lo > reach) gap = max(gap, lo - reach);
    reach = max(reach, hi);
  }
  if (R.threshold > reach) gap = max(gap, R.threshold - reach);
  R.delta_max_gap = gap;
  // ω₂ is affine in δ with slope -(1/σ + 1)
  R.omega_max_gap = gap * (one(R.sigma) / R.sigma + one(R.sigma));
  return R;
}

}  // namespace sturmlab
