#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sturmlab/bigreal.hpp"
#include "sturmlab/quadsurd.hpp"

namespace sturmlab {

// s_0 = -1, s_1 = 1, s_k >= 1. Either prefix + periodic tail, or a generator.
class SturmianProgram {
 public:
  static SturmianProgram periodic(std::vector<long> prefix, std::vector<long> period);
  // Generator gives s_k for k >= 2.
  static SturmianProgram generated(std::function<long(long)> gen, bool bounded);
  // "prefix=[-1,1];period=[1]"
  static SturmianProgram parse(const std::string& spec);
  static SturmianProgram fibonacci() { return periodic({-1, 1}, {1}); }

  long s(long k) const;
  long t(long k) const;
  // psi(n) for n >= 0.
  long psi(long n) const;
  // partial inverse on i >= -2
  long psi_inv(long i) const;
  // n = t_k + l with t_k <= n < t_{k+1}, k >= 1, for n >= 0.
  std::pair<long, long> locate(long n) const;
  bool is_t(long n) const;

  bool bounded() const { return bounded_; }
  bool is_periodic() const { return !gen_; }
  bool all_ones() const;
  const std::vector<long>& prefix() const { return prefix_; }
  const std::vector<long>& period() const { return period_; }
  std::string spec() const;

 private:
  SturmianProgram() = default;
  void grow_t(long k) const;

  std::vector<long> prefix_;
  std::vector<long> period_;
  std::function<long(long)> gen_;
  bool bounded_ = true;

  struct Cache {
    std::mutex mu;
    std::vector<long> t;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// [s_{k+1}; s_k, ..., s_1] as an exact rational.
mpq_class cf_backward_exact(const SturmianProgram& prog, long k);
BigReal cf_backward(const SturmianProgram& prog, long k, mpfr_prec_t prec = BigReal::kDefaultPrec);

struct CFQuantities {
  BigReal sigma, tau, sigma_prime;
  bool sigma_prime_infinite = false;
  bool exact = false;
  std::optional<QuadSurd> sigma_exact, tau_exact, sigma_prime_exact;
  long window_lo = 0, window_hi = 0;
};

CFQuantities quantities(const SturmianProgram& prog, long K = 64,
                        mpfr_prec_t prec = BigReal::kDefaultPrec);

BigReal h_of_sigma(const BigReal& sigma);

std::vector<long> characteristic_word(const std::function<long(long)>& s_prime, long a, long b, size_t n);

// [b] >= [T^k b] for k = 0..K; b = prefix + repeated period.
bool cassaigne_member(const std::vector<long>& prefix, const std::vector<long>& period, long K);

struct SpectrumEndpoint {
  std::string label;
  BigReal value;
  QuadSurd exact;
};

// delta_{a,n} = n + n sqrt(1 + 4/(an)) = 2 [n; a, n, a, ...]
QuadSurd delta_an(long a, long n);
std::vector<SpectrumEndpoint> spectrum_endpoints(mpfr_prec_t prec = BigReal::kDefaultPrec);
// Closure intervals: [1+sqrt5, 2+sqrt5], [2+2sqrt2, 3+2sqrt3], [3+sqrt13, inf)
std::vector<std::pair<QuadSurd, std::optional<QuadSurd>>> spectrum_intervals();

}  // namespace sturmlab
