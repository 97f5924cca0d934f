#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sturmlab/bigreal.hpp"
#include "sturmlab/paramgeo.hpp"
#include "sturmlab/sturm.hpp"

namespace sturmlab {

struct ExpValue {
  enum class Kind { Unknown, Exact, Interval, Empirical };
  Kind kind = Kind::Unknown;
  BigReal lo, hi;      // Exact and Empirical use lo == hi
  std::string window;  // Empirical: "k=9..14"
  bool low_confidence = false;

  static ExpValue exact(const BigReal& v);
  static ExpValue interval(const BigReal& lo, const BigReal& hi);
  static ExpValue empirical(const BigReal& v, const std::string& window, bool low_confidence = false);
  bool known() const { return kind != Kind::Unknown; }
  BigReal value() const;  // midpoint for intervals
  std::string kind_name() const;
  std::string str(int digits = 6) const;
};

struct ExponentSet {
  ExpValue psi1_lo, psi1_hi, psi2_lo, psi2_hi, psi3_lo, psi3_hi;
  ExpValue omega2, omega2_hat, lambda2, lambda2_hat;
  BigReal sigma, delta, tau, sigma_prime;
  bool sigma_prime_infinite = false;
  std::optional<BigReal> crossover;  // ψ̲₂ is exact for δ up to this value
  std::optional<BigReal> psi3_lo_jarnik;  // empirical only: ψ̲₃ solved from ψ̄₁
};

BigReal theta(const BigReal& sigma_prime, bool sigma_prime_infinite, const BigReal& tau, const BigReal& delta);
// Largest δ in [0, σ/(1+σ)] up to which min(first term, θ(δ)) = θ(δ), by bisection;
// empty when the first term is already below θ at δ = 0.
std::optional<BigReal> psi2_crossover(const BigReal& sigma, const BigReal& tau, const BigReal& sigma_prime, bool sigma_prime_infinite);

// Throws ImproperDelta unless 0 <= δ < σ/(1+σ).
ExponentSet closed_form(const BigReal& sigma, const BigReal& delta, const BigReal& tau, const BigReal& sigma_prime,
                        bool sigma_prime_infinite = false);
ExponentSet closed_form(const CFQuantities& q, const BigReal& delta);

// Standard (ω₂, ω̂₂, λ̂₂, λ₂) <-> parametric (ψ̲₁, ψ̄₁, ψ̲₃, ψ̄₃); throws OutOfRange outside the admissible ranges.
std::array<ExpValue, 4> to_parametric(const ExpValue& omega2, const ExpValue& omega2_hat, const ExpValue& lambda2_hat,
                                      const ExpValue& lambda2);
std::array<ExpValue, 4> to_standard(const ExpValue& psi1_lo, const ExpValue& psi1_hi, const ExpValue& psi3_lo,
                                    const ExpValue& psi3_hi);

// 2ψ̲₃ + 2ψ̄₁ − 3ψ̲₃ψ̄₁ − 1
BigReal jarnik_parametric_residual(const BigReal& psi3_lo, const BigReal& psi1_hi);
// λ̂₂ − (1 − 1/ω̂₂)
BigReal jarnik_residual(const BigReal& lambda2_hat, const BigReal& omega2_hat);

// Late-window extrema of L_j/q at the breakpoint abscissas of P over k in [k_lo, k_hi].
// Throws BadWindow when a needed abscissa has no sample.
ExponentSet empirical(const SystemBreakpoints& P, const std::vector<MinimaSample>& samples, long k_lo, long k_hi);
// The abscissas empirical() reads for k in [k_lo, k_hi].
std::vector<BigReal> empirical_abscissas(const SystemBreakpoints& P, long k_lo, long k_hi);

// (λ₂, λ̂₂, ω₂, ω̂₂) along x = 1 − δ in [c_lo, 1].
std::vector<std::array<BigReal, 4>> joint_curve(const BigReal& sigma, const BigReal& c_lo, long grid_n);

struct SweepRow {
  long a = 0, b = 0, c = 0;
  std::string error;  // set when the triple is rejected; the row is left out of the coverage
  std::pair<BigReal, BigReal> bracket;
  std::optional<BigReal> delta_hat;
  bool in_bracket = true;
  bool proper = false;
  std::pair<BigReal, BigReal> omega2;  // ω₂ over the bracket
};

struct SweepReport {
  BigReal sigma, threshold;
  std::vector<SweepRow> rows;
  BigReal delta_max_gap;  // uncovered stretch of [0, σ/(1+σ)], 0 counted as covered
  BigReal omega_max_gap;  // uncovered stretch of [ω₂(threshold), 1 + 2/σ]
};

// a = 2^l, b = 2^(k-l) − 1, c = 2^(k-l) for 1 <= l < k <= k_max
std::vector<std::array<long, 3>> recipe_triples(long k_max);
// k_delta > 0 also estimates δ at that depth and checks it against the bracket.
SweepReport omega2_sweep(const SturmianProgram& prog, const std::vector<std::array<long, 3>>& triples,
                         long k_delta = 0);

}  // namespace sturmlab
