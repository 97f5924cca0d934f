#include <doctest.h>

#include <cmath>

#include "sturmlab/matseq.hpp"

using namespace sturmlab;

namespace {

bool symmetric(const IntMat2& m) { return m.a12 == m.a21; }

// w_{k+1} = w_k^{s_{k+1}} w_{k-1}, recomputed from the seed
std::vector<IntMat2> direct(const MatrixSeed& s, const SturmianProgram& p, long k_max) {
  std::vector<IntMat2> w{s.w0, s.w1};
  for (long k = 1; k < k_max; ++k) w.push_back(pow(w[k], unsigned(p.s(k + 1))) * w[k - 1]);
  return w;
}

}  // namespace

TEST_CASE("matrix sequences follow the recurrence") {
  for (const char* spec : {"prefix=[-1,1];period=[1]", "prefix=[-1,1];period=[2]", "prefix=[-1,1,3];period=[1,2]"}) {
    auto p = SturmianProgram::parse(spec);
    for (const MatrixSeed& s : {roy_family(2, 1, 2), roy_family(3, 1, 3), bl_family(1, 2, 1)}) {
      MatrixSequence seq(s, p);
      auto w = direct(s, p, 12);
      for (long k = 0; k <= 12; ++k) CHECK(seq.w(k) == w[k]);
      for (long k = 1; k <= 10; ++k)
        for (long l = 0; l <= p.s(k + 1) + 1; ++l) CHECK(seq.ladder(k, l) == pow(w[k], unsigned(l)) * w[k - 1]);
    }
  }
}

TEST_CASE("admissibility matrices make the three products symmetric") {
  for (const MatrixSeed& s : {roy_family(2, 1, 2), roy_family(3, 1, 3), roy_family(4, 3, 4), bl_family(1, 2, 1),
                              bl_family(2, 1, 1), bl_family(1, 3, 2)}) {
    CHECK(symmetric(s.w1 * s.N));
    CHECK(symmetric(s.w0 * s.N.transpose()));
    CHECK(symmetric(s.w1 * s.w0 * s.N.transpose()));
    CHECK(s.N.det() != 0);
    CHECK(is_admissible(s.w0, s.w1, s.N));
    CHECK(s.TrJN == trace_JM(s.N));
  }
  CHECK(trace_JM(IntMat2(1, 2, 3, 4)) == 3 - 2);
  CHECK_THROWS_AS(roy_family(1, 1, 2), Error);
  CHECK_THROWS_AS(roy_family(2, 3, 2), Error);
  CHECK_THROWS_AS(bl_family(2, 2, 1), Error);
}

TEST_CASE("Roy (2,1,1) is not proper-capable") {
  MatrixSeed s = roy_family(2, 1, 1);
  CHECK(s.TrJN == 0);
  CHECK_FALSE(s.proper_capable);
}

TEST_CASE("custom seeds solve for N") {
  MatrixSeed r = roy_family(2, 1, 2);
  MatrixSeed c = custom_seed(r.w0, r.w1);
  CHECK(is_admissible(c.w0, c.w1, c.N));
  CHECK_THROWS_AS(custom_seed(IntMat2(1, 1, 1, 1), r.w1), Error);
}

TEST_CASE("multiplicative growth ratios stay bounded") {
  MatrixSequence seq(roy_family(2, 1, 2), SturmianProgram::fibonacci());
  GrowthReport g = check_mult_growth(seq, 14);
  CHECK(g.count > 0);
  CHECK(g.ratio_min > 0.25);
  CHECK(g.ratio_max < 4);
  CHECK(ordered_entries_shape(IntMat2(1, 2, 3, 7)));
  CHECK_FALSE(ordered_entries_shape(IntMat2(2, 1, 3, 7)));
}

TEST_CASE("delta for Bugeaud-Laurent seeds is exactly zero") {
  MatrixSequence seq(bl_family(1, 2, 1), SturmianProgram::fibonacci());
  DeltaReport d = delta_estimate(seq, 16);
  CHECK(d.exact_zero);
  for (long k = 0; k <= 16; ++k) CHECK(abs(seq.w(k).det()) == 1);
}

namespace {

double log_mpz(const Int& x) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(m) + double(e) * std::log(2.0);
}

}  // namespace

TEST_CASE("delta_k against log|det w_k| / log||w_k||") {
  MatrixSequence seq(roy_family(2, 1, 2), SturmianProgram::fibonacci());
  DeltaReport d = delta_estimate(seq, 18);
  for (long k = 4; k <= 18; ++k) {
    double ld = log_mpz(abs(seq.w(k).det()));
    double ln = log_mpz(seq.w(k).max_norm());
    CHECK(d.delta[k].to_double() == doctest::Approx(ld / ln).epsilon(1e-9));
  }
  REQUIRE(d.certified_bracket);
  for (long k = 8; k <= 18; ++k) {
    CHECK(d.delta[k] >= d.certified_bracket->first);
    CHECK(d.delta[k] <= d.certified_bracket->second);
  }
}

TEST_CASE("recipe triples have brackets inside [l/(k+2), l/k]") {
  for (long k = 2; k <= 10; ++k)
    for (long l = 1; l < k; ++l) {
      auto [lo, hi] = roy_certified_bracket(1L << l, (1L << (k - l)) - 1, 1L << (k - l));
      CHECK(lo.to_double() >= double(l) / double(k + 2) - 1e-15);
      CHECK(hi.to_double() == doctest::Approx(double(l) / double(k)).epsilon(1e-14));
      CHECK(lo < hi);
    }
  auto [pa, pb] = roy_printed_bracket(2, 1, 2);
  CHECK(pa.to_double() == doctest::Approx(std::log(2.0) / std::log(12.0)));
  CHECK(pb.to_double() == doctest::Approx(std::log(2.0) / std::log(8.0)));
}

TEST_CASE("hat W solves the recurrence and tracks the norms") {
  for (const char* spec : {"prefix=[-1,1];period=[1]", "prefix=[-1,1];period=[2]"}) {
    auto p = SturmianProgram::parse(spec);
    MatrixSequence seq(bl_family(1, 2, 1), p);
    HatW h = hat_w(seq, 14);
    for (long k = h.k_min() + 1; k < 14; ++k) {
      BigReal rhs = BigReal(p.s(k + 1)) * h.at(k) + h.at(k - 1);
      CHECK(abs(h.at(k + 1) - rhs).to_double() < 1e-40);
    }
    for (long k = h.k_min(); k <= 14; ++k) CHECK(std::abs((h.at(k) - seq.log_norm(k)).to_double()) < 1.0);
    CHECK(h.max_dev.to_double() < 1.0);
    CHECK(h.at(h.k_min()).sign() > 0);
  }
}
