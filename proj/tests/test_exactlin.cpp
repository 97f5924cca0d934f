#include <doctest.h>

#include <random>

#include "sturmlab/bigreal.hpp"
#include "sturmlab/exactlin.hpp"
#include "sturmlab/logform.hpp"
#include "sturmlab/quadsurd.hpp"

using namespace sturmlab;

namespace {

using L3 = std::array<long long, 3>;

L3 cross(const L3& a, const L3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

long long det3_ll(const L3& a, const L3& b, const L3& c) {
  L3 w = cross(b, c);
  return a[0] * w[0] + a[1] * w[1] + a[2] * w[2];
}

SymVec sv(const L3& a) { return {Int(long(a[0])), Int(long(a[1])), Int(long(a[2]))}; }

}  // namespace

TEST_CASE("matrix products and powers") {
  IntMat2 a{1, 2, 3, 4}, b{0, 1, -1, 5};
  IntMat2 ab = a * b;
  CHECK(ab == IntMat2(-2, 11, -4, 23));
  CHECK(pow(a, 0) == IntMat2::identity());
  CHECK(pow(a, 3) == a * a * a);
  CHECK((a * b).det() == a.det() * b.det());
  CHECK(a.adj() * a == a.det() * IntMat2::identity());
  CHECK(IntMat2::J() * IntMat2::J() == Int(-1) * IntMat2::identity());
}

TEST_CASE("wedge and det3 against a 64-bit oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-999, 999);
  for (int it = 0; it < 200; ++it) {
    L3 a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)}, c{d(rng), d(rng), d(rng)};
    SymVec w = wedge(sv(a), sv(b));
    L3 x = cross(a, b);
    CHECK(w == sv(x));
    CHECK(det3(sv(a), sv(b), sv(c)) == Int(long(det3_ll(a, b, c))));
    CHECK(dot(w, sv(a)) == 0);
    CHECK(dot(w, sv(b)) == 0);
  }
}

TEST_CASE("content and primitive part") {
  SymVec v{Int(12), Int(-18), Int(30)};
  CHECK(content(v) == 6);
  CHECK(primitive(v) == SymVec(Int(2), Int(-3), Int(5)));
  CHECK(content(IntMat2{4, 8, 12, 16}) == 4);
}

TEST_CASE("BigReal rounding and logs") {
  BigReal two(2L);
  CHECK(abs(exp(log(two)) - two).to_double() < 1e-70);
  CHECK(abs(log_abs(Int(-1024)) - BigReal(10L) * log(two)).to_double() < 1e-70);
  CHECK(BigReal::from_string("0.5") == BigReal(1L) / two);
  CHECK_THROWS(BigReal::from_string("x1"));
  BigReal hi = BigReal(1L, 4000) / BigReal(3L, 4000);
  CHECK(hi.prec() == 4000);
}

TEST_CASE("quadratic surds compare exactly") {
  QuadSurd phi(1, 1, 2, 5);  // golden ratio
  CHECK(abs(phi.value() - (BigReal(1L) + sqrt(BigReal(5L))) / BigReal(2L)).to_double() < 1e-70);
  CHECK(phi.reciprocal() < phi);
  CHECK(phi.mobius(1, -1, 0, 1) == phi.reciprocal());  // phi - 1 = 1/phi
  CHECK(QuadSurd::rational(mpq_class(3, 2)) < phi);
}

TEST_CASE("log forms evaluate linearly") {
  LogBasis b{BigReal(2L), BigReal(5L), BigReal(1L) / BigReal(4L)};
  LogForm f{1, 2, 3, 0};  // (1 + 2δ) B0 + 3 B1
  CHECK(abs(f.eval(b) - BigReal(18L)).to_double() < 1e-70);
  CHECK((f - f).is_zero());
  CHECK_THROWS(f.times_delta());
  LogForm g{1, 0, 1, 0};
  CHECK(g.times_delta() == LogForm{0, 1, 0, 1});
}
