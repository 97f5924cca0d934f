#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sturmlab/approx.hpp"
#include "sturmlab/bigreal.hpp"

namespace sturmlab {

struct XiValue {
  mpq_class lo, hi;  // ξ in [lo, hi]
  long index = 0;    // last y_i used
  BigReal value;     // midpoint
  std::array<BigReal, 3> u;  // (1, ξ, ξ²)
  std::vector<std::pair<mpq_class, mpq_class>> history;  // nested enclosures
  std::vector<double> contraction;  // |r_{i+1} - r_i| / |r_i - r_{i-1}|
  mpfr_prec_t prec = BigReal::kDefaultPrec;

  mpq_class width() const { return hi - lo; }
  // Midpoint to `digits` decimals and a bound on the error.
  std::string digits(int digits) const;
};

// Enclosures from r_i = y_{i,1} / y_{i,0}. Once the step ratio drops below
// 1/2 the tail is bounded by 2 rho |r_{i+1} - r_i|.
XiValue xi_value(ApproxSeq& ap, long precision_bits, long index_budget = 4000);

// [0; m_φ] for a BL seed, the word built from s1' and s_k (k >= 2), to at
// least `precision_bits` bits.
mpq_class bl_continued_fraction(const MatrixSeed& seed, const SturmianProgram& prog, long precision_bits);

struct Properness {
  BigReal delta_hat;
  BigReal threshold;  // σ/(1+σ)
  std::optional<std::pair<BigReal, BigReal>> bracket;
  bool delta_ok = false;           // δ̂ < σ/(1+σ)
  bool bracket_certifies = false;  // bracket upper end < σ/(1+σ)
  Int max_content;
  bool content_bounded = false;    // every content(y_i) divides det N
  bool trjn_nonzero = false;
  bool proper = false;
  long k_max = 0;
};

Properness properness_check(ApproxSeq& ap, long k_max = 18);

struct DiagRow {
  long i;
  std::array<double, 5> r;  // log of the five ratios
};

struct DiagFamily {
  double min = 0, max = 0;
  double spread() const;  // max/min of the ratio (not its log)
};

struct DiagnosticsTable {
  std::vector<DiagRow> rows;
  std::array<DiagFamily, 5> fam;
  std::vector<std::pair<std::pair<long, long>, double>> wedge_ratio_log;  // log(||y_i ^ y_j|| / ||y_i adj(y_j)||)
  bool item4_exact = true;
  long burn_in = 0;
  bool monotone_ok = true;
  long monotone_witness = -1;
};

// Ratios over i in [i_lo, i_hi]; Euclidean norm.
DiagnosticsTable norm_diagnostics(ApproxSeq& ap, const XiValue& xi, long i_lo, long i_hi);

// Every nonzero v with sup-norm <= box has <v, y_i> != 0 for some i <= i_max.
bool independence_proxy(ApproxSeq& ap, long box, long i_max);

}  // namespace sturmlab
