#include <doctest.h>

#include <cmath>

#include "sturmlab/error.hpp"
#include "sturmlab/sturm.hpp"

using namespace sturmlab;

namespace {

// [s_{k+1}; s_k, ..., s_1] by direct recursion
double backward_cf(const SturmianProgram& p, long k) {
  double x = double(p.s(1));
  for (long j = 2; j <= k + 1; ++j) x = double(p.s(j)) + 1.0 / x;
  return x;
}

}  // namespace

TEST_CASE("t_k and psi from the definitions") {
  auto p = SturmianProgram::parse("prefix=[-1,1,3];period=[1,2]");
  CHECK(p.s(0) == -1);
  CHECK(p.s(1) == 1);
  CHECK(p.s(2) == 3);
  CHECK(p.s(3) == 1);
  CHECK(p.s(4) == 2);
  long t = -1;
  for (long k = 0; k <= 30; ++k) {
    if (k > 0) t += p.s(k);
    CHECK(p.t(k) == t);
  }
  for (long n = 0; n < 200; ++n) {
    long expect = n - 1;
    for (long k = 1; k <= 200; ++k)
      if (p.t(k) == n) expect = p.t(k - 1) - 1;
    CHECK(p.psi(n) == expect);
    auto [k, l] = p.locate(n);
    CHECK(p.t(k) + l == n);
    CHECK(n < p.t(k + 1));
  }
  auto f = SturmianProgram::fibonacci();
  for (long k = 1; k < 20; ++k) CHECK(f.t(k) == k - 1);
  CHECK(f.all_ones());
  CHECK_FALSE(p.all_ones());
}

TEST_CASE("program specs round-trip and reject garbage") {
  auto p = SturmianProgram::parse("prefix=[-1,1];period=[2]");
  CHECK(SturmianProgram::parse(p.spec()).s(7) == 2);
  CHECK_THROWS_AS(SturmianProgram::parse("period=[x]"), sturmlab::Error);
  CHECK_THROWS_AS(SturmianProgram::parse("prefix=[-1,1];period=[0]"), sturmlab::Error);
}

TEST_CASE("backward continued fractions") {
  auto p = SturmianProgram::parse("prefix=[-1,1];period=[1,2]");
  for (long k = 1; k < 25; ++k) CHECK(cf_backward(p, k).to_double() == doctest::Approx(backward_cf(p, k)).epsilon(1e-14));
}

TEST_CASE("sigma and tau against the tail of the backward expansions") {
  for (const char* spec : {"prefix=[-1,1];period=[1]", "prefix=[-1,1];period=[2]", "prefix=[-1,1];period=[1,2]",
                           "prefix=[-1,1];period=[1,1,3]"}) {
    auto p = SturmianProgram::parse(spec);
    double lo = 1e9, hi = 0;
    for (long k = 200; k < 260; ++k) {
      double v = 1.0 / backward_cf(p, k);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CFQuantities q = quantities(p);
    CHECK(q.sigma.to_double() == doctest::Approx(lo).epsilon(1e-12));
    CHECK(q.tau.to_double() == doctest::Approx(hi).epsilon(1e-12));
  }
  CFQuantities f = quantities(SturmianProgram::fibonacci());
  CHECK(f.sigma.to_double() == doctest::Approx((std::sqrt(5.0) - 1) / 2));
  CHECK(f.sigma_prime_infinite);
}

TEST_CASE("h(sigma) is the root of d^2 - (sigma+2) d + sigma") {
  for (double s : {0.1, 0.3, 0.5, 0.618}) {
    double h = h_of_sigma(BigReal(s)).to_double();
    CHECK(h * h - (s + 2) * h + s == doctest::Approx(0).epsilon(1e-12));
    CHECK(h > 0);
    CHECK(h < s / (1 + s));
  }
  CHECK(h_of_sigma(quantities(SturmianProgram::fibonacci()).sigma).to_double() == doctest::Approx(0.2623596948));
}

TEST_CASE("characteristic words follow the standard recurrence") {
  auto w = characteristic_word([](long) { return 1L; }, 0, 1, 13);
  // Fibonacci standard words: 1, 0, 01, 010, 01001, ...
  std::vector<long> expect{0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1};
  CHECK(std::vector<long>(w.begin(), w.begin() + 13) == expect);
}

TEST_CASE("Cassaigne membership") {
  CHECK(cassaigne_member({}, {1}, 10));
  CHECK(cassaigne_member({}, {2}, 10));
  CHECK(cassaigne_member({}, {2, 1}, 10));
  CHECK_FALSE(cassaigne_member({}, {1, 2}, 10));
}

TEST_CASE("spectrum endpoints") {
  auto near = [](const QuadSurd& x, double v) { return std::abs(x.value().to_double() - v) < 1e-12; };
  CHECK(near(delta_an(1, 1), 1 + std::sqrt(5.0)));
  CHECK(near(delta_an(2, 2), 2 + 2 * std::sqrt(2.0)));
  CHECK(near(delta_an(3, 3), 3 + std::sqrt(13.0)));
  auto iv = spectrum_intervals();
  REQUIRE(iv.size() == 3);
  CHECK(near(*iv[0].second, 2 + std::sqrt(5.0)));
  CHECK(near(*iv[1].second, 3 + 2 * std::sqrt(3.0)));
  CHECK_FALSE(iv[2].second.has_value());
}
