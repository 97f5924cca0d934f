#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sturmlab/bigreal.hpp"
#include "sturmlab/exactlin.hpp"
#include "sturmlab/sturm.hpp"

namespace sturmlab {

enum class Family { Roy, BL, Custom };

struct MatrixSeed {
  IntMat2 w0, w1, N;
  Family family = Family::Custom;
  long a = 0, b = 0, c = 0;  // Roy (a,b,c) or BL (a,b,s1')
  Int TrJN, detN;
  bool proper_capable = false;
  // BL: the printed inverse-product formula and whether it is admissible.
  std::optional<IntMat2> printed_N;
  bool printed_N_admissible = false;

  std::string label() const;
};

// Tr(J M) for J = [[0,1],[-1,0]]
Int trace_JM(const IntMat2& m);
bool is_admissible(const IntMat2& w0, const IntMat2& w1, const IntMat2& N);

MatrixSeed roy_family(long a, long b, long c);
MatrixSeed bl_family(long a, long b, long s1_prime);
MatrixSeed custom_seed(const IntMat2& w0, const IntMat2& w1);
IntMat2 solve_admissibility(const IntMat2& w0, const IntMat2& w1);

// Grow-only memo of w_k and the ladder w_k^l w_{k-1}, 0 <= l <= s_{k+1}+1.
class MatrixSequence {
 public:
  MatrixSequence(MatrixSeed seed, SturmianProgram prog, size_t max_bits = size_t(1) << 26);

  const MatrixSeed& seed() const { return seed_; }
  const SturmianProgram& prog() const { return prog_; }

  const IntMat2& w(long k);
  // w_k^l w_{k-1}, k >= 1, 0 <= l <= s_{k+1}+1
  const IntMat2& ladder(long k, long l);
  const IntMat2& extend(long k) { return w(k); }
  // N_k: N for even k, N^T for odd k
  IntMat2 N_k(long k) const;

  Int tr(long k) { return w(k).trace(); }
  Int det(long k) { return w(k).det(); }
  const BigReal& log_norm(long k);  // log of the max-coefficient norm

 private:
  void grow(long k);
  MatrixSeed seed_;
  SturmianProgram prog_;
  size_t max_bits_;
  std::vector<IntMat2> w_;
  std::vector<std::vector<IntMat2>> ladder_;
  std::vector<BigReal> log_norm_;
};

struct GrowthReport {
  double ratio_min = 0, ratio_max = 0;
  long count = 0;
  long k_max = 0;
  bool shape_w0 = false, shape_w1 = false;
};

// r(k,l) = ||w_k^l w_{k-1}|| / (||w_k|| ||w_k^{l-1} w_{k-1}||), max-coefficient norm
GrowthReport check_mult_growth(MatrixSequence& seq, long k_max);
// 1 <= a <= min(b,c) <= max(b,c) <= d for [[a,b],[c,d]]
bool ordered_entries_shape(const IntMat2& m);

struct DeltaReport {
  std::vector<BigReal> delta;       // delta_k for k = 0..k_max (0 when |det| = 1)
  std::vector<BigReal> increments;  // |delta_{k+1} - delta_k|
  BigReal delta_hat;
  bool exact_zero = false;          // |det w_k| = 1 for all k
  // Roy: the printed bracket and the corrected one
  std::optional<std::pair<BigReal, BigReal>> printed_bracket, certified_bracket;
  long k_max = 0;
};

DeltaReport delta_estimate(MatrixSequence& seq, long k_max);
// alpha = log a / log(2a(c+1)), printed beta = log a / log(2a(b+1)), corrected beta = log a / log(a(b+1))
std::pair<BigReal, BigReal> roy_printed_bracket(long a, long b, long c, mpfr_prec_t prec = BigReal::kDefaultPrec);
std::pair<BigReal, BigReal> roy_certified_bracket(long a, long b, long c, mpfr_prec_t prec = BigReal::kDefaultPrec);

struct HatW {
  long k0 = 2;
  std::vector<BigReal> log_w;  // log W_k for k >= k0-1; entries below k0-1 are unset
  const BigReal& at(long k) const;
  long k_min() const { return k0 - 1; }
  long k_max() const { return static_cast<long>(log_w.size()) - 1; }
  // log W_k = f_k log W_{k0-1} + g_k log W_{k0}
  std::vector<std::pair<Int, Int>> basis;
  long fit_hi = 0;  // log W_{k0-1}, log W_{k0} are fitted to log ||w_k|| for k0-1 <= k <= fit_hi
  BigReal max_dev;  // max |log W_k - log ||w_k||| over k0-1 <= k <= k_max
};

// Solution of the Sturmian recurrence with log W_k - log ||w_k|| bounded.
// k0 < 0 selects the default anchor (2, advanced past degenerate norms).
HatW hat_w(MatrixSequence& seq, long k_max, long k0 = -1);

}  // namespace sturmlab
