// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sturmlab/approx.hpp"
#include "sturmlab/exponents.hpp"
#include "sturmlab/minima.hpp"
#include "sturmlab/paramgeo.hpp"
#include "sturmlab/xi.hpp"

using namespace sturmlab;

namespace {

constexpr long kUpToK = 14;               // identities and contents up to t_14
constexpr double kIdentitySeconds = 60;
constexpr long kDeltaK = 18;
constexpr double kDeltaStep = 1e-3;       // |δ_18 − δ_17|
constexpr double kClosedFormTol = 1e-10;
constexpr double kSymbolicTol = 1e-30;
constexpr int kGridSide = 32;             // 32 x 32 >= 10^3 points
constexpr double kEndpointTol = 1e-10;
constexpr double kValidityTol = 1e-9;
constexpr double kForcedDelta = 0.5;
constexpr long kSystemKLo = 3, kSystemKHi = 14;
constexpr long kSystemGrid = 400;
constexpr long kXiBits = 7000;            // ξ for minima up to q ≈ 1600
constexpr long kCandidateIMax = 17;
constexpr double kQMax = 12;              // brute-force regime
constexpr long kDualityPoints = 24;
constexpr long kOraclePoints = 20;
constexpr double kEmpiricalTol = 0.02;
constexpr double kEmpiricalSeconds = 600;
constexpr long kXiDigits = 50;
constexpr long kGrayLo = 3, kGrayHi = 12;
constexpr long kSweepK = 10;
constexpr double kSweepGap = 0.15;

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void guarded(const std::string& id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct SeedCase {
  std::string name;
  MatrixSeed seed;
  SturmianProgram prog;
};

std::vector<SeedCase> identity_seeds() {
  auto fib = SturmianProgram::fibonacci();
  return {{"roy(2,1,2)", roy_family(2, 1, 2), fib},
          {"roy(3,1,3)", roy_family(3, 1, 3), fib},
          {"bl(1,2,1)", bl_family(1, 2, 1), fib},
          {"roy(2,1,2)/period 2", roy_family(2, 1, 2), SturmianProgram::parse("prefix=[-1,1];period=[2]")}};
}

std::vector<SeedCase> minima_seeds() {
  auto fib = SturmianProgram::fibonacci();
  return {{"bl(1,2,1)", bl_family(1, 2, 1), fib},
          {"roy(2,1,2)", roy_family(2, 1, 2), fib},
          {"roy(3,1,3)", roy_family(3, 1, 3), fib}};
}

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream bad;
  long checked = 0;
  for (auto& c : identity_seeds()) {
    MatrixSequence seq(c.seed, c.prog);
    ApproxSeq ap(seq);
    IdentityReport r = verify_identities(ap, c.prog.t(kUpToK));
    for (const auto& ch : r.checks) {
      checked += ch.checked;
      if (!ch.ok) bad << " " << c.name << ":" << ch.name << "@" << ch.witness;
    }
  }
  double s = seconds_since(t0);
  bool pass = bad.str().empty() && s < kIdentitySeconds;
  report("1 exact identities", pass,
         std::to_string(checked) + " checks in " + num(s, 3) + " s" + (bad.str().empty() ? "" : "; failing" + bad.str()));
}

void criterion2() {
  std::ostringstream detail;
  bool pass = true;
  for (auto& c : identity_seeds()) {
    MatrixSequence seq(c.seed, c.prog);
    ApproxSeq ap(seq);
    ContentReport r = contents_report(ap, c.prog.t(kUpToK));
    pass = pass && r.all_ok();
    detail << c.name << " " << (r.all_ok() ? "ok" : "FAIL") << " (max content " << r.max_content_y.get_str()
           << ", bound " << r.bound.get_str() << "); ";
  }
  report("2 contents", pass, detail.str());
}

void criterion3() {
  auto fib = SturmianProgram::fibonacci();
  MatrixSequence roy(roy_family(2, 1, 2), fib);
  DeltaReport d = delta_estimate(roy, kDeltaK);
  const double lo = std::log(2.0) / std::log(12.0), hi = std::log(2.0) / std::log(8.0);
  long first_out = -1;
  for (long k = 1; k <= kDeltaK; ++k) {
    double v = d.delta[k].to_double();
    if ((v < lo || v > hi) && first_out < 0) first_out = k;
  }
  double step = std::abs((d.delta[kDeltaK] - d.delta[kDeltaK - 1]).to_double());
  MatrixSequence bl(bl_family(1, 2, 1), fib);
  bool bl_zero = delta_estimate(bl, kDeltaK).exact_zero;
  bool pass = first_out < 0 && step < kDeltaStep && bl_zero;
  std::string detail = "delta_18 = " + num(d.delta[kDeltaK].to_double(), 6) + ", bracket [" + num(lo, 6) + ", " +
                       num(hi, 6) + "]" +
                       (first_out >= 0 ? ", first k outside: " + std::to_string(first_out) + " (delta_k = " +
                                             num(d.delta[first_out].to_double(), 6) + ")"
                                       : "") +
                       ", |delta_18 - delta_17| = " + num(step, 3) + ", BL exact zero: " + (bl_zero ? "yes" : "no");
  if (d.certified_bracket)
    detail += ", corrected bracket [" + num(d.certified_bracket->first.to_double(), 6) + ", " +
              num(d.certified_bracket->second.to_double(), 6) + "]";
  report("3 delta certification", pass, detail);
}

void criterion4() {
  const BigReal one(1L), two(2L);
  const BigReal inv_gamma = (sqrt(BigReal(5L)) - one) / two;
  const BigReal gamma = one / inv_gamma;
  ExponentSet e = closed_form(quantities(SturmianProgram::fibonacci()), BigReal(0L));
  double e1 = abs(e.omega2_hat.lo - gamma * gamma).to_double();
  double e2 = abs(e.lambda2_hat.lo - inv_gamma).to_double();
  double worst = 0;
  long n = 0;
  for (int a = 1; a <= kGridSide; ++a)
    for (int b = 0; b < kGridSide; ++b) {
      BigReal s = inv_gamma * BigReal(long(a)) / BigReal(long(kGridSide));
      BigReal d = s / (one + s) * BigReal(long(b)) / BigReal(long(kGridSide));
      ExponentSet x = closed_form(s, d, s, BigReal(2L));
      worst = std::max(worst, abs(jarnik_residual(x.lambda2_hat.lo, x.omega2_hat.lo)).to_double());
      worst = std::max(worst, abs(one / x.psi1_lo.lo - one - x.omega2.lo).to_double());
      ++n;
    }
  bool pass = e1 < kClosedFormTol && e2 < kClosedFormTol && worst < kSymbolicTol;
  report("4 closed forms", pass,
         "|omega2_hat - gamma^2| = " + num(e1, 3) + ", |lambda2_hat - 1/gamma| = " + num(e2, 3) +
             ", worst identity residual " + num(worst, 3) + " over " + std::to_string(n) + " points");
}

void criterion5() {
  const double want[3] = {1 + std::sqrt(5.0), 2 + 2 * std::sqrt(2.0), 3 + std::sqrt(13.0)};
  const QuadSurd got[3] = {delta_an(1, 1), delta_an(2, 2), delta_an(3, 3)};
  double worst = 0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(got[i].value().to_double() - want[i]));
  auto iv = spectrum_intervals();
  bool union_ok = iv.size() == 3 && iv[0].first == got[0] && iv[1].first == got[1] && iv[2].first == got[2] &&
                  iv[0].second && std::abs(iv[0].second->value().to_double() - (2 + std::sqrt(5.0))) < kEndpointTol &&
                  iv[1].second && std::abs(iv[1].second->value().to_double() - (3 + 2 * std::sqrt(3.0))) < kEndpointTol &&
                  !iv[2].second;
  std::string u;
  for (const auto& [lo, hi] : iv) u += " [" + lo.str() + ", " + (hi ? hi->str() : std::string("inf")) + "]";
  report("5 spectrum endpoints", worst < kEndpointTol && union_ok, "max endpoint error " + num(worst, 3) + ";" + u);
}

// Shared BL (1,2,1) system with candidate samples for criteria 6, 7 and 9.
struct BLRun {
  MatrixSequence seq{bl_family(1, 2, 1), SturmianProgram::fibonacci()};
  ApproxSeq ap{seq};
  SystemBreakpoints P = predicted_system(seq, kSystemKLo, kSystemKHi, BigReal(0L), "exact");
  std::vector<MinimaSample> samples;
  double seconds = 0;

  void sample() {
    auto t0 = std::chrono::steady_clock::now();
    XiValue xi = xi_value(ap, kXiBits);
    CandidateSet C = CandidateSet::build(ap, xi.u, kCandidateIMax);
    auto grid = q_grid(P, P.span_lo(), P.span_hi(), kSystemGrid);
    auto extra = empirical_abscissas(P, 9, kSystemKHi);
    grid.insert(grid.end(), extra.begin(), extra.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const auto& q : grid) samples.push_back(minima_candidates(C, q.with_prec(xi.prec), true, &P));
    seconds = seconds_since(t0);
  }
};

void criterion6(BLRun& bl) {
  ThreeSystemVerdict v = three_system_verdict(bl.P, BigReal(kValidityTol));
  SystemBreakpoints forced = predicted_system(bl.seq, kSystemKLo, kSystemKHi, BigReal(kForcedDelta), "forced");
  ThreeSystemVerdict f = three_system_verdict(forced, BigReal(kValidityTol));
  report("6 3-system validity", v.valid() && !f.valid(),
         "delta = 0: " + std::string(v.valid() ? "valid" : "invalid (" + v.reason() + ")") + " over " +
             std::to_string(bl.P.pieces.size()) + " pieces; delta = 0.5: " +
             (f.valid() ? "valid" : "invalid (" + f.reason() + ")"));
}

void criterion7(BLRun& bl) {
  ComparisonReport r = compare(bl.P, bl.samples, {4, 8}, {9, 14});
  report("7 prediction vs minima", r.ok(),
         "max|L1-P1| early " + num(r.early.item1) + " late " + num(r.late.item1) + "; on I_j |L2-P2| " +
             num(r.early.item2_L2) + " -> " + num(r.late.item2_L2) + ", |L3-P3| " + num(r.early.item2_L3) + " -> " +
             num(r.late.item2_L3) + "; gray C = " + num(r.C_gray) + " over " + std::to_string(r.n_gray) +
             " samples; " + std::to_string(bl.samples.size()) + " samples");
}

void criterion8() {
  std::ostringstream detail;
  bool pass = true;
  for (auto& c : minima_seeds()) {
    MatrixSequence seq(c.seed, c.prog);
    ApproxSeq ap(seq);
    XiValue xi = xi_value(ap, 600);
    CandidateSet C = CandidateSet::build(ap, xi.u, 14);
    DualityReport d = duality_check(xi.u, uniform_grid(BigReal(0L), BigReal(kQMax), kDualityPoints), C);
    bool finite = std::isfinite(d.max_dev[0]) && std::isfinite(d.max_dev[1]) && std::isfinite(d.max_dev[2]);
    pass = pass && finite && d.nongrowth;
    detail << c.name << " max " << num(std::max({d.max_dev[0], d.max_dev[1], d.max_dev[2]}), 3) << " (late "
           << num(d.late[0], 3) << "/" << num(d.late[1], 3) << "/" << num(d.late[2], 3) << " vs early "
           << num(d.early[0], 3) << "/" << num(d.early[1], 3) << "/" << num(d.early[2], 3) << "); ";
  }
  report("8 Mahler duality", pass, detail.str());
}

void criterion9(BLRun& bl) {
  ExponentSet e = empirical(bl.P, bl.samples, 9, kSystemKHi);
  ExponentSet c = closed_form(quantities(SturmianProgram::fibonacci()), BigReal(0L));
  const std::pair<const char*, ExpValue ExponentSet::*> rows[] = {{"psi1_lo", &ExponentSet::psi1_lo},
                                                                  {"psi1_hi", &ExponentSet::psi1_hi},
                                                                  {"psi2_hi", &ExponentSet::psi2_hi},
                                                                  {"psi3_lo", &ExponentSet::psi3_lo},
                                                                  {"psi3_hi", &ExponentSet::psi3_hi}};
  bool pass = bl.seconds < kEmpiricalSeconds;
  std::string detail;
  for (const auto& [name, m] : rows) {
    double d = std::abs(((e.*m).lo - (c.*m).lo).to_double());
    pass = pass && d < kEmpiricalTol;
    detail += std::string(name) + " " + num((e.*m).lo.to_double(), 5) + " vs " + num((c.*m).lo.to_double(), 5) + "; ";
  }
  report("9 empirical exponents", pass, detail + "window k=9..14, " + num(bl.seconds, 3) + " s");
}

void criterion10() {
  auto fib = SturmianProgram::fibonacci();
  MatrixSeed s = bl_family(1, 2, 1);
  MatrixSequence seq(s, fib);
  ApproxSeq ap(seq);
  long bits = long(std::ceil(kXiDigits * std::log2(10.0))) + 32;
  XiValue xi = xi_value(ap, bits);
  mpq_class cf = bl_continued_fraction(s, fib, bits + 32);
  mpq_class mid = (xi.lo + xi.hi) / 2;
  mpq_class diff = abs(mid - cf);
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, kXiDigits);
  bool pass = diff * ten < 1;
  report("10 xi cross-check", pass,
         "xi = " + xi.value.to_fixed(20) + "..., |matrix limit - continued fraction| = " +
             BigReal(diff, 512).to_sci(3));
}

void criterion11() {
  MatrixSequence seq(roy_family(2, 1, 2), SturmianProgram::fibonacci());
  ApproxSeq ap(seq);
  std::ostringstream bad;
  for (long i = kGrayLo; i <= kGrayHi; ++i) {
    GrayFan g = gray_fan(ap, i);
    if (!g.endpoints_ok) bad << " endpoints@" << i;
    if (!g.wedge_ok) bad << " wedge@" << i;
    if (!g.content_product_ok) bad << " c_m*c_{m+1}|d_i@" << i;
    if (!g.content_gcd_ok) bad << " gcd@" << i;
  }
  report("11 gray areas", bad.str().empty(),
         "i in [3,12]" + (bad.str().empty() ? std::string() : "; failing" + bad.str()));
}

void criterion12() {
  std::ostringstream detail;
  bool pass = true;
  for (auto& c : minima_seeds()) {
    MatrixSequence seq(c.seed, c.prog);
    ApproxSeq ap(seq);
    Int bound = contents_report(ap, 14).bound;
    double tol = std::log(bound.get_d());
    XiValue xi = xi_value(ap, 600);
    CandidateSet C = CandidateSet::build(ap, xi.u, 14);
    DeltaReport dr = delta_estimate(seq, kDeltaK);
    SystemBreakpoints P = predicted_system(seq, 2, 8, dr.exact_zero ? BigReal(0L) : dr.delta_hat, "estimate");
    double gap = 0;
    long n = 0;
    for (const auto& q : uniform_grid(BigReal(0L), BigReal(kQMax), kOraclePoints + 10)) {
      if (n == kOraclePoints) break;
      if (P.in_gray(q)) continue;
      BigReal Q = q.with_prec(xi.prec);
      MinimaSample b = minima_bruteforce(xi.u, Q, bound_hint(C, Q)), m = minima_candidates(C, Q);
      for (int j = 0; j < 3; ++j) gap = std::max(gap, (m.L[j] - b.L[j]).to_double());
      ++n;
    }
    bool ok = gap <= tol + 1e-12 && n == kOraclePoints;
    pass = pass && ok;
    detail << c.name << " gap " << num(gap, 3) << " vs log bound " << num(tol, 3) << " (" << n << " points"
           << (ok ? "" : ", FAIL") << "); ";
  }
  report("12 oracle agreement", pass, detail.str());
}

void density_sweep() {
  SweepReport r = omega2_sweep(SturmianProgram::fibonacci(), recipe_triples(kSweepK));
  long proper = 0;
  for (const auto& row : r.rows) proper += row.proper;
  report("density sweep", r.delta_max_gap.to_double() < kSweepGap,
         std::to_string(r.rows.size()) + " triples, " + std::to_string(proper) + " certified proper, max gap " +
             num(r.delta_max_gap.to_double(), 4) + " in [0, " + num(r.threshold.to_double(), 6) + "], omega2 gap " +
             num(r.omega_max_gap.to_double(), 4));
}

}  // namespace

int main() {
  guarded("1 exact identities", criterion1);
  guarded("2 contents", criterion2);
  guarded("3 delta certification", criterion3);
  guarded("4 closed forms", criterion4);
  guarded("5 spectrum endpoints", criterion5);
  BLRun bl;
  guarded("6 3-system validity", [&] { criterion6(bl); });
  bool sampled = false;
  guarded("BL candidate samples", [&] {
    bl.sample();
    sampled = true;
  });
  if (sampled) {
    guarded("7 prediction vs minima", [&] { criterion7(bl); });
    guarded("9 empirical exponents", [&] { criterion9(bl); });
  } else {
    report("7 prediction vs minima", false, "no samples");
    report("9 empirical exponents", false, "no samples");
  }
  guarded("8 Mahler duality", criterion8);
  guarded("10 xi cross-check", criterion10);
  guarded("11 gray areas", criterion11);
  guarded("12 oracle agreement", criterion12);
  guarded("density sweep", density_sweep);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
