#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sturmlab/bigreal.hpp"
#include "sturmlab/exactlin.hpp"
#include "sturmlab/logform.hpp"
#include "sturmlab/matseq.hpp"

namespace sturmlab {

using RealVec3 = std::array<BigReal, 3>;

// Cached logs of a point against u, Euclidean norm.
struct Trajectory {
  SymVec x;
  BigReal log_norm, log_dot, log_wedge;  // log||x||, log|x.u|, log||x ^ u||
  double ln = 0, ld = 0, lw = 0;

  static Trajectory make(const SymVec& x, const RealVec3& u);
  // L_x(q) = max(log||x||, log|x.u| + q)
  BigReal L(const BigReal& q) const;
  // L*_x(q) = max(log||x ^ u||, log||x|| - q)
  BigReal Ls(const BigReal& q) const;
  double Ld(double q) const { return std::max(ln, ld + q); }
  double Lsd(double q) const { return std::max(lw, ln - q); }
};

std::pair<BigReal, BigReal> traj_eval(const SymVec& x, const RealVec3& u, const BigReal& q);

struct MinimaSample {
  BigReal q;
  std::array<BigReal, 3> L;
  std::array<SymVec, 3> pts;
  std::optional<std::array<BigReal, 3>> Ls;  // dual minima when computed
  std::string method;                        // "bruteforce" | "candidate"
  bool gray = false;                         // q in a predicted gray interval
};

// a + slope q
struct Line {
  LogForm a;
  int slope = 0;
  BigReal at(const LogBasis& b, const BigReal& q) const;
};

// Which hat-function a component of P comes from on [c_i, c_{i+1}).
enum class Comp { TopZ, DualY, NextZ };  // hatL_{t_{k+1}}, -hatL*_{i+1}, hatL_{i+1}
const char* comp_name(Comp c);

struct Piece {
  LogForm e0, e1;  // exact endpoints
  BigReal q0, q1;
  std::array<Line, 3> comp;  // P1 <= P2 <= P3
  std::array<Comp, 3> label;
  long i = 0, k = 0;  // c_i <= q < c_{i+1}, t_k - 1 <= i < t_{k+1} - 1
};

struct IndexData {
  long i = 0, k = 0, l = 0;  // i = t_k + l
  LogForm logY, logZ, logE, logEs, q, c;
  BigReal qv, cv;
};

struct SystemBreakpoints {
  long k0 = 2, k_lo = 0, k_hi = 0;
  LogBasis basis;
  std::string delta_source;
  BigReal threshold;  // σ/(1+σ)
  bool delta_proper = false;
  std::vector<LogForm> logW;  // k = 0 .. k_hi + 1
  std::map<long, IndexData> idx;
  std::vector<Piece> pieces;
  std::map<long, std::pair<BigReal, BigReal>> I;  // I_j = [a_j, b_j]
  std::map<long, std::pair<BigReal, BigReal>> gray;  // I'_j = [b_{j-1}, a_j]
  std::map<long, LogForm> a_exact, b_exact;

  BigReal span_lo() const { return pieces.front().q0; }
  BigReal span_hi() const { return pieces.back().q1; }
  const Piece* piece_at(const BigReal& q) const;
  std::array<BigReal, 3> P(const BigReal& q) const;
  // The k with q_{t_k} <= q < q_{t_{k+1}}, or -1 outside the span.
  long k_of(const BigReal& q) const;
  std::optional<long> in_I(const BigReal& q) const;
  std::optional<long> in_gray(const BigReal& q) const;
  // d_k, a_{t_k} as derived in closed form
  LogForm d(long k) const;
  LogForm a_closed(long k) const;
  BigReal val(const LogForm& f) const { return f.eval(basis); }
  std::vector<BigReal> breakpoints() const;
};

// P on [c_{t_{k_lo}-1}, c_{t_{k_hi+1}-1}). k0 < 0 picks the default anchor.
SystemBreakpoints predicted_system(MatrixSequence& seq, long k_lo, long k_hi, const BigReal& delta,
                                   const std::string& delta_source, long k0 = -1);

// Generic continuous piecewise linear map for the 3-system checks.
struct PLPiece {
  BigReal q0, q1;
  std::array<BigReal, 3> v0;     // values at q0
  std::array<BigReal, 3> slope;  // per component
};

struct ValidityReport {
  bool ordered = true, sum_ok = true, slopes_ok = true, switch_ok = true, continuous = true;
  long pieces = 0;
  std::string first_failure;
  bool valid() const { return ordered && sum_ok && slopes_ok && switch_ok && continuous; }
};

std::vector<PLPiece> to_pl(const SystemBreakpoints& P);
ValidityReport validate_3system(const std::vector<PLPiece>& P, const BigReal& tol);

struct StructureReport {
  bool order_qc = true;       // q_i < c_i < q_{i+1} < c_{i+1}
  bool values_at_c = true;    // exact values of the hat functions at c_i
  bool sum_exact = true;      // components sum to q in the log basis on every piece
  bool growth_positive = true, growth_increasing = true;
  bool I_nonempty = true;     // -hatL*_{i+1} is P3 somewhere on each [c_i, c_{i+1}]
  bool form_ok = true;        // combined graph on each [c_i, c_{i+1}] has the predicted shape
  long witness = -1;
  bool ok() const {
    return order_qc && values_at_c && sum_exact && growth_positive && growth_increasing && I_nonempty && form_ok;
  }
};
StructureReport structure_checks(const SystemBreakpoints& P, const BigReal& tol);

// 3-system conditions on the sampled pieces, the predicted shape, and δ below σ/(1+σ).
struct ThreeSystemVerdict {
  ValidityReport conditions;
  StructureReport structure;
  bool delta_proper = false;
  bool valid() const { return conditions.valid() && structure.ok() && delta_proper; }
  std::string reason() const;
};
ThreeSystemVerdict three_system_verdict(const SystemBreakpoints& P, const BigReal& tol);

struct ComparisonReport {
  struct Window {
    long k_lo = 0, k_hi = 0;
    double item1 = 0, item2_L2 = 0, item2_L3 = 0;
    long n = 0, nI = 0;
  };
  Window early, late;
  double C_gray = 0;
  long n_gray = 0;
  bool item1_nongrowth = false, item2_nongrowth = false;
  bool ok() const { return item1_nongrowth && item2_nongrowth; }
};

ComparisonReport compare(const SystemBreakpoints& P, const std::vector<MinimaSample>& samples,
                         std::pair<long, long> early, std::pair<long, long> late);

}  // namespace sturmlab
