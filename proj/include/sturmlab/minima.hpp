#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sturmlab/approx.hpp"
#include "sturmlab/paramgeo.hpp"

namespace sturmlab {

struct Candidate {
  Trajectory tr;
  std::string tag;  // "y3", "z5", "y2^y4", "gray4.1", "box"
};

// Integer points whose trajectories are expected to realize the minima.
struct CandidateSet {
  std::vector<Candidate> items;
  long i_max = 0;

  // y_i, primitive z_j, primitive y_i ^ y_j (|i - j| <= 3) for i <= i_max, the gray fans
  // when the program is all ones, and primitive points of sup-norm <= box.
  static CandidateSet build(ApproxSeq& ap, const RealVec3& u, long i_max, long box = 3);
  void add(const SymVec& x, const RealVec3& u, const std::string& tag);
};

// Upper bounds for L_3 and L*_3 at q.
struct BoundHint {
  BigReal L3;
  std::optional<BigReal> Ls3;
};
BoundHint bound_hint(const CandidateSet& c, const BigReal& q);

struct BruteForceOptions {
  double safety = 2.0;
  double R_max = 1e4;     // radius cap in the primal norm and the transverse dual norm
  double work_max = 4e8;  // lattice points visited per body
  bool dual = true;
};

MinimaSample minima_bruteforce(const RealVec3& u, const BigReal& q, const BoundHint& hint,
                               const BruteForceOptions& opt = {});

// Exact minima by enumeration in a basis LLL-reduced for the body's quadratic form
// (||x||^2 + e^{2q}(x.u)^2, dual ||x ^ u||^2 + e^{-2q}||x||^2). Works at any q as long as u
// carries enough bits; throws BadWindow when it does not, TooLarge past max_points.
MinimaSample minima_reduced(const RealVec3& u, const BigReal& q, const BoundHint& hint, bool dual = true,
                            long max_points = 20000);

// Bits of u needed by minima_reduced at q.
long reduced_bits_needed(const BigReal& q, const BoundHint& hint);

// P, when given, is used to flag q inside a gray interval.
MinimaSample minima_candidates(const CandidateSet& c, const BigReal& q, bool dual = true,
                               const SystemBreakpoints* P = nullptr);

// Breakpoints {q_i, c_i, a_i, b_i, d_k} in [lo, hi] plus n uniform points, sorted and deduplicated.
std::vector<BigReal> q_grid(const SystemBreakpoints& P, const BigReal& lo, const BigReal& hi, long n);
std::vector<BigReal> uniform_grid(const BigReal& lo, const BigReal& hi, long n);

struct DualityReport {
  std::array<double, 3> max_dev{};  // max |L_j + L*_{4-j}|
  std::array<double, 3> early{}, late{};
  long n = 0;
  bool nongrowth = false;  // late <= 2 early + 1e-9 for every j
};

// Brute force on every grid point; the first half of the grid is the early window.
DualityReport duality_check(const RealVec3& u, const std::vector<BigReal>& grid, const CandidateSet& c,
                            const BruteForceOptions& opt = {});

}  // namespace sturmlab
