#include <doctest.h>

#include <cmath>

#include "sturmlab/error.hpp"
#include "sturmlab/exponents.hpp"

using namespace sturmlab;

namespace {

const double gamma_ = (1 + std::sqrt(5.0)) / 2;

BigReal R(double x) { return BigReal(x); }
BigReal inv_gamma() { return (sqrt(BigReal(5L)) - BigReal(1L)) / BigReal(2L); }

ExponentSet fib(const BigReal& delta) { return closed_form(quantities(SturmianProgram::fibonacci()), delta); }

}  // namespace

TEST_CASE("closed forms at sigma = 1/gamma, delta = 0") {
  ExponentSet e = fib(BigReal(0L));
  CHECK(e.omega2_hat.kind == ExpValue::Kind::Exact);
  CHECK(std::abs(e.omega2_hat.lo.to_double() - gamma_ * gamma_) < 1e-14);
  CHECK(std::abs(e.lambda2_hat.lo.to_double() - 1 / gamma_) < 1e-14);
  CHECK(std::abs(e.omega2.lo.to_double() - (2 + std::sqrt(5.0))) < 1e-14);
  CHECK(e.lambda2.lo.to_double() == doctest::Approx(1.0));
  CHECK(e.psi3_hi.lo.to_double() == doctest::Approx(0.5));
  CHECK(e.psi3_lo.lo.to_double() == doctest::Approx(1 / (gamma_ * gamma_)));
}

TEST_CASE("closed forms against direct evaluation on a grid") {
  for (double s : {0.2, 0.41421356, 0.5, 0.61803398}) {
    for (double d = 0; d < s / (1 + s); d += 0.03) {
      double tau = s, sp = 1.5;
      ExponentSet e = closed_form(R(s), R(d), R(tau), R(sp));
      CHECK(e.psi1_lo.lo.to_double() == doctest::Approx(s / ((2 - d) * (1 + s))));
      CHECK(e.psi1_hi.lo.to_double() == doctest::Approx(1 / ((1 - d) * (1 + s) + 2)));
      CHECK(e.psi2_hi.lo.to_double() == doctest::Approx(1 / (2 + s)));
      CHECK(e.psi3_lo.lo.to_double() == doctest::Approx((1 - d) * (1 + s) / (1 + 2 * (1 - d) * (1 + s))));
      CHECK(e.omega2.lo.to_double() == doctest::Approx((2 - d) / s + 1 - d));
      CHECK(e.omega2_hat.lo.to_double() == doctest::Approx(1 + (1 - d) * (1 + s)));
      double th = std::min((1 + sp) / ((2 - d) * (2 + sp)), 1 / (2 + (1 - d) * (1 + tau)));
      CHECK(e.psi2_lo.hi.to_double() == doctest::Approx(th));
      double h = s / 2 + 1 - std::sqrt(s * s / 4 + 1);
      CHECK((e.lambda2.kind == ExpValue::Kind::Exact) == (d <= h));
      // lower exponents below the upper ones
      CHECK(e.psi1_lo.lo <= e.psi1_hi.lo);
      CHECK(e.psi2_lo.lo <= e.psi2_hi.hi);
      CHECK(e.psi3_lo.lo <= e.psi3_hi.lo);
      CHECK(e.lambda2_hat.lo.to_double() >= 0.5 - 1e-12);
      CHECK(e.lambda2_hat.lo.to_double() <= 1 / gamma_ + 1e-12);
      CHECK(e.omega2_hat.lo.to_double() >= 2 - 1e-12);
      CHECK(e.omega2_hat.lo.to_double() <= gamma_ * gamma_ + 1e-12);
    }
  }
}

TEST_CASE("symbolic identities hold to working precision") {
  for (int a = 1; a <= 20; ++a)
    for (int b = 0; b < 20; ++b) {
      BigReal s = inv_gamma() * BigReal(long(a)) / BigReal(20L);
      BigReal d = s / (BigReal(1L) + s) * BigReal(long(b)) / BigReal(20L);
      ExponentSet e = closed_form(s, d, s, BigReal(2L));
      CHECK(abs(jarnik_residual(e.lambda2_hat.lo, e.omega2_hat.lo)).to_double() < 1e-30);
      CHECK(abs(BigReal(1L) / e.psi1_lo.lo - BigReal(1L) - e.omega2.lo).to_double() < 1e-30);
      CHECK(abs(jarnik_parametric_residual(e.psi3_lo.lo, e.psi1_hi.lo)).to_double() < 1e-30);
    }
}

TEST_CASE("lambda2 at delta = 1/3 is an interval") {
  ExponentSet e = fib(BigReal(1L) / BigReal(3L));
  CHECK(e.lambda2.kind == ExpValue::Kind::Interval);
  CHECK(e.lambda2.lo.to_double() == doctest::Approx(2.0 / 3));
  CHECK(e.lambda2.hi.to_double() == doctest::Approx(1 / (2.0 / 3 + 1 / gamma_)));
}

TEST_CASE("improper delta is rejected") {
  CHECK_THROWS_AS(fib(BigReal(0.39)), Error);
  CHECK_THROWS_AS(fib(BigReal(-0.01)), Error);
  try {
    fib(BigReal(0.5));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ImproperDelta);
  }
}

TEST_CASE("the two branches of the upper psi_3 bound cross at h(sigma)") {
  for (double s : {0.3, 0.5, 0.618}) {
    double h = h_of_sigma(R(s)).to_double();
    CHECK((1 - h) / (2 - h) == doctest::Approx(1 / (2 - h + s)));
  }
}

TEST_CASE("omega2_hat decreases in delta") {
  double prev = 1e9;
  for (double d = 0; d < 0.38; d += 0.02) {
    double v = fib(R(d)).omega2_hat.lo.to_double();
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("crossover against a scan") {
  for (double sp : {0.5, 1.0, 3.0}) {
    BigReal s = inv_gamma();
    auto c = psi2_crossover(s, s, R(sp), false);
    double sd = s.to_double(), thr = sd / (1 + sd);
    auto A = [&](double d) { return (1 - d) * (1 + sd) / ((2 - d) * (1 + sd) + 1); };
    auto th = [&](double d) { return std::min((1 + sp) / ((2 - d) * (2 + sp)), 1 / (2 + (1 - d) * (1 + sd))); };
    double scan = -1;
    for (double d = 0; d <= thr; d += 1e-5) {
      if (A(d) < th(d)) break;
      scan = d;
    }
    if (scan < 0) {
      CHECK_FALSE(c.has_value());
    } else {
      REQUIRE(c.has_value());
      CHECK(c->to_double() == doctest::Approx(scan).epsilon(1e-3));
    }
  }
}

TEST_CASE("dictionary examples and round trip") {
  ExponentSet e = fib(BigReal(0L));
  auto p = to_parametric(e.omega2, e.omega2_hat, e.lambda2_hat, e.lambda2);
  CHECK(p[3].lo.to_double() == doctest::Approx(0.5));
  CHECK(p[1].lo.to_double() == doctest::Approx(1 / (gamma_ * gamma_ + 1)));
  CHECK(abs(jarnik_parametric_residual(p[2].lo, p[1].lo)).to_double() < 1e-30);
  auto s = to_standard(p[0], p[1], p[2], p[3]);
  CHECK(abs(s[0].lo - e.omega2.lo).to_double() < 1e-60);
  CHECK(abs(s[1].lo - e.omega2_hat.lo).to_double() < 1e-60);
  CHECK(abs(s[2].lo - e.lambda2_hat.lo).to_double() < 1e-60);
  CHECK(abs(s[3].lo - e.lambda2.lo).to_double() < 1e-60);

  // intervals map endpoint-wise, reversed under 1/(x+1)
  auto q = to_parametric(ExpValue::interval(R(3), R(4)), e.omega2_hat, e.lambda2_hat,
                         ExpValue::interval(R(0.6), R(0.8)));
  CHECK(q[0].lo.to_double() == doctest::Approx(0.2));
  CHECK(q[0].hi.to_double() == doctest::Approx(0.25));
  CHECK(q[3].lo.to_double() == doctest::Approx(0.375));
  CHECK(q[3].hi.to_double() == doctest::Approx(0.8 / 1.8));

  CHECK_THROWS_AS(to_parametric(ExpValue::exact(R(1.5)), e.omega2_hat, e.lambda2_hat, e.lambda2), Error);
  CHECK_THROWS_AS(to_standard(ExpValue::exact(R(0.4)), p[1], p[2], p[3]), Error);
}

TEST_CASE("joint curve") {
  BigReal s = inv_gamma();
  auto pts = joint_curve(s, R(0.5), 11);
  REQUIRE(pts.size() == 11);
  CHECK(pts.front()[0].to_double() == doctest::Approx(0.5));
  CHECK(pts.back()[0] == BigReal(1L));
  CHECK(pts.back()[1].to_double() == doctest::Approx(1 / gamma_));
  CHECK(pts.back()[2].to_double() == doctest::Approx(2 + std::sqrt(5.0)));
  CHECK(pts.back()[3].to_double() == doctest::Approx(gamma_ * gamma_));
  for (const auto& p : pts) CHECK(abs(p[1] - (BigReal(1L) - BigReal(1L) / p[3])).to_double() < 1e-60);
}

TEST_CASE("recipe sweep") {
  auto t = recipe_triples(6);
  CHECK(t.size() == 1 + 2 + 3 + 4 + 5);
  CHECK(t.front() == std::array<long, 3>{2, 1, 2});

  auto prog = SturmianProgram::fibonacci();
  SweepReport empty = omega2_sweep(prog, {});
  CHECK(empty.rows.empty());

  SweepReport r = omega2_sweep(prog, recipe_triples(10));
  CHECK(r.rows.size() == 45);
  CHECK(r.delta_max_gap.to_double() < 0.15);
  for (const auto& row : r.rows) {
    CHECK(row.error.empty());
    CHECK(row.omega2.first <= row.omega2.second);
    CHECK(row.proper == (row.bracket.second < r.threshold));
  }
  // ω₂ spans [2/σ, 1 + 2/σ] as δ runs over [0, σ/(1+σ)]
  CHECK(r.omega_max_gap.to_double() == doctest::Approx(r.delta_max_gap.to_double() * (gamma_ + 1)));

  SweepReport bad = omega2_sweep(prog, {{1, 1, 1}});
  REQUIRE(bad.rows.size() == 1);
  CHECK_FALSE(bad.rows[0].error.empty());
}

TEST_CASE("empirical exponents need their abscissas") {
  MatrixSequence seq(bl_family(1, 2, 1), SturmianProgram::fibonacci());
  SystemBreakpoints P = predicted_system(seq, 3, 8, BigReal(0L), "exact");
  CHECK_THROWS_AS(empirical(P, {}, 5, 6), Error);
  CHECK_THROWS_AS(empirical_abscissas(P, 6, 5), Error);
}
