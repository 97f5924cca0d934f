#include <doctest.h>

#include <cmath>

#include "sturmlab/paramgeo.hpp"

using namespace sturmlab;

namespace {

PLPiece piece(double q0, double q1, std::array<double, 3> v0, std::array<int, 3> slope) {
  PLPiece p;
  p.q0 = BigReal(q0);
  p.q1 = BigReal(q1);
  for (int j = 0; j < 3; ++j) {
    p.v0[j] = BigReal(v0[j]);
    p.slope[j] = BigReal(long(slope[j]));
  }
  return p;
}

}  // namespace

TEST_CASE("trajectories against the defining maxima") {
  RealVec3 u{BigReal(1L), BigReal(0.5), BigReal(0.25)};
  SymVec x{Int(3), Int(-1), Int(2)};
  Trajectory t = Trajectory::make(x, u);
  double n = std::sqrt(14.0), d = std::abs(3 - 0.5 + 0.5), w = std::sqrt(std::pow(-0.25 - 1, 2) + std::pow(2 - 0.75, 2) + std::pow(1.5 + 1, 2));
  for (double q : {0.0, 0.7, 2.0, 5.0}) {
    CHECK(t.L(BigReal(q)).to_double() == doctest::Approx(std::max(std::log(n), std::log(d) + q)));
    CHECK(t.Ls(BigReal(q)).to_double() == doctest::Approx(std::max(std::log(w), std::log(n) - q)));
  }
}

TEST_CASE("Def 3-system conditions on hand-built maps") {
  BigReal tol(1e-12);
  std::vector<PLPiece> good{piece(2, 3, {0, 1, 1}, {0, 0, 1}), piece(3, 4, {0, 1, 2}, {1, 0, 0})};
  CHECK(validate_3system(good, tol).valid());

  std::vector<PLPiece> bad_switch{piece(2, 3, {0, 1, 2}, {1, 0, 0}), piece(3, 4, {1, 1, 2}, {0, 0, 1})};
  ValidityReport r = validate_3system(bad_switch, tol);
  CHECK_FALSE(r.switch_ok);
  CHECK_FALSE(r.valid());

  std::vector<PLPiece> bad_order{piece(2, 3, {0, 2, 1}, {0, 0, 1})};
  CHECK_FALSE(validate_3system(bad_order, tol).ordered);

  std::vector<PLPiece> bad_slopes{piece(2, 3, {0, 1, 1}, {0, 1, 1})};
  CHECK_FALSE(validate_3system(bad_slopes, tol).valid());

  std::vector<PLPiece> gap{piece(2, 3, {0, 1, 1}, {0, 0, 1}), piece(3, 4, {0, 1, 3}, {1, 0, 0})};
  CHECK_FALSE(validate_3system(gap, tol).continuous);
}

TEST_CASE("predicted system for a Bugeaud-Laurent seed") {
  MatrixSequence seq(bl_family(1, 2, 1), SturmianProgram::fibonacci());
  SystemBreakpoints P = predicted_system(seq, 3, 12, BigReal(0L), "exact");
  CHECK(P.threshold.to_double() == doctest::Approx(0.381966011250105));
  CHECK(P.delta_proper);

  // ordered components summing to q at arbitrary points of the span
  double lo = P.span_lo().to_double(), hi = P.span_hi().to_double();
  for (int n = 1; n < 200; ++n) {
    BigReal q(lo + (hi - lo) * n / 200.0);
    auto v = P.P(q);
    CHECK(v[0] <= v[1]);
    CHECK(v[1] <= v[2]);
    CHECK(std::abs((v[0] + v[1] + v[2] - q).to_double()) < 1e-9);
  }
  for (size_t i = 0; i + 1 < P.pieces.size(); ++i) CHECK(P.pieces[i].q1 == P.pieces[i + 1].q0);

  auto bps = P.breakpoints();
  CHECK(std::is_sorted(bps.begin(), bps.end()));
  for (const auto& [i, d] : P.idx)
    if (P.idx.count(i + 1)) CHECK(d.qv < P.idx.at(i + 1).qv);

  ThreeSystemVerdict v = three_system_verdict(P, BigReal(1e-9));
  CHECK(v.valid());
  CHECK(v.reason().empty());
}

TEST_CASE("forcing delta above the threshold breaks the verdict") {
  MatrixSequence seq(bl_family(1, 2, 1), SturmianProgram::fibonacci());
  SystemBreakpoints P = predicted_system(seq, 3, 12, BigReal(0.5), "forced");
  CHECK_FALSE(P.delta_proper);
  ThreeSystemVerdict v = three_system_verdict(P, BigReal(1e-9));
  CHECK_FALSE(v.valid());
  CHECK(v.reason().find("delta") != std::string::npos);
}

TEST_CASE("d_k and a_{t_k} in closed form") {
  MatrixSequence seq(bl_family(1, 2, 1), SturmianProgram::fibonacci());
  SystemBreakpoints P = predicted_system(seq, 3, 10, BigReal(0L), "exact");
  for (long k = 4; k <= 10; ++k) {
    double w = P.val(P.logW[k]).to_double(), w1 = P.val(P.logW[k - 1]).to_double();
    CHECK(P.val(P.d(k)).to_double() == doctest::Approx(3 * w + w1));
    CHECK(P.val(P.a_closed(k)).to_double() == doctest::Approx(2 * w + w1));
  }
}
