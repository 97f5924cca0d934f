#include "sturmlab/sturm.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "sturmlab/error.hpp"

namespace sturmlab {

namespace {

std::vector<long> parse_list(const std::string& body) {
  std::vector<long> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      long v = std::stol(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(Errc::Parse, "bad integer '" + item + "'");
    }
  }
  return out;
}

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace

SturmianProgram SturmianProgram::periodic(std::vector<long> prefix, std::vector<long> period) {
  if (period.empty()) throw Error(Errc::BadSequence, "empty period");
  SturmianProgram p;
  p.prefix_ = std::move(prefix);
  p.period_ = std::move(period);
  p.bounded_ = true;
  for (long k = 0; k < static_cast<long>(p.prefix_.size() + 2 * p.period_.size()) + 2; ++k) {
    long v = p.s(k);
    if (k == 0 && v != -1) throw Error(Errc::BadSequence, "s_0 must be -1");
    if (k == 1 && v != 1) throw Error(Errc::BadSequence, "s_1 must be 1");
    if (k >= 2 && v < 1) throw Error(Errc::BadSequence, "s_k must be >= 1 for k >= 2");
  }
  return p;
}

SturmianProgram SturmianProgram::generated(std::function<long(long)> gen, bool bounded) {
  SturmianProgram p;
  p.prefix_ = {-1, 1};
  p.gen_ = std::move(gen);
  p.bounded_ = bounded;
  for (long k = 2; k < 64; ++k)
    if (p.s(k) < 1) throw Error(Errc::BadSequence, "s_k must be >= 1 for k >= 2");
  return p;
}

SturmianProgram SturmianProgram::parse(const std::string& spec) {
  static const std::regex re(R"(\s*prefix\s*=\s*\[([^\]]*)\]\s*;\s*period\s*=\s*\[([^\]]*)\]\s*)");
  std::smatch m;
  if (!std::regex_match(spec, m, re))
    throw Error(Errc::Parse, "expected prefix=[...];period=[...], got '" + spec + "'");
  return periodic(parse_list(m[1].str()), parse_list(m[2].str()));
}

std::string SturmianProgram::spec() const {
  if (gen_) return "generated";
  return "prefix=" + join(prefix_) + ";period=" + join(period_);
}

long SturmianProgram::s(long k) const {
  if (k < 0) throw Error(Errc::BadIndex, "s_k with k < 0");
  if (k < static_cast<long>(prefix_.size())) return prefix_[k];
  if (gen_) return gen_(k);
  long m = static_cast<long>(prefix_.size());
  return period_[(k - m) % static_cast<long>(period_.size())];
}

bool SturmianProgram::all_ones() const {
  if (gen_) return false;
  for (size_t k = 1; k < prefix_.size(); ++k)
    if (prefix_[k] != 1) return false;
  for (long v : period_)
    if (v != 1) return false;
  return true;
}

void SturmianProgram::grow_t(long k) const {
  auto& t = cache_->t;
  if (t.empty()) t.push_back(s(0));
  while (static_cast<long>(t.size()) <= k) t.push_back(t.back() + s(static_cast<long>(t.size())));
}

long SturmianProgram::t(long k) const {
  if (k < 0) throw Error(Errc::BadIndex, "t_k with k < 0");
  std::lock_guard<std::mutex> lock(cache_->mu);
  grow_t(k);
  return cache_->t[k];
}

std::pair<long, long> SturmianProgram::locate(long n) const {
  if (n < 0) throw Error(Errc::BadIndex, "locate with n < 0");
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& t = cache_->t;
  grow_t(2);
  while (t.back() <= n) grow_t(static_cast<long>(t.size()));
  // largest k with t_k <= n
  auto it = std::upper_bound(t.begin() + 1, t.end(), n);
  long k = static_cast<long>(it - t.begin()) - 1;
  return {k, n - t[k]};
}

bool SturmianProgram::is_t(long n) const {
  if (n == -1) return true;
  auto [k, l] = locate(n);
  (void)k;
  return l == 0;
}

long SturmianProgram::psi(long n) const {
  if (n < 0) throw Error(Errc::BadIndex, "psi(n) with n < 0");
  auto [k, l] = locate(n);
  if (l == 0) return t(k - 1) - 1;
  return n - 1;
}

long SturmianProgram::psi_inv(long i) const {
  if (i < -2) throw Error(Errc::BadIndex, "psi_inv(i) with i < -2");
  if (i == -2) return t(1);
  // i = t_{k+1} - 1 maps to t_{k+2}
  if (is_t(i + 1)) {
    if (i + 1 == -1) return t(1);
    auto [k, l] = locate(i + 1);
    (void)l;
    return t(k + 1);
  }
  return i + 1;
}

mpq_class cf_backward_exact(const SturmianProgram& prog, long k) {
  if (k < 1) throw Error(Errc::BadIndex, "cf_backward needs k >= 1");
  // evaluate from the innermost term s_1 outward
  mpq_class v = prog.s(1);
  for (long j = 2; j <= k + 1; ++j) v = mpq_class(prog.s(j)) + 1 / v;
  return v;
}

BigReal cf_backward(const SturmianProgram& prog, long k, mpfr_prec_t prec) {
  return BigReal(cf_backward_exact(prog, k), prec);
}

CFQuantities quantities(const SturmianProgram& prog, long K, mpfr_prec_t prec) {
  if (!prog.bounded()) throw Error(Errc::Unbounded, "quantities need a bounded program");
  CFQuantities q;
  if (prog.is_periodic()) {
    const auto& per = prog.period();
    const long n = static_cast<long>(per.size());
    std::vector<QuadSurd> lim(n);
    for (long j = 0; j < n; ++j) {
      std::vector<long> rev(n);
      for (long i = 0; i < n; ++i) rev[i] = per[((j - i) % n + n) % n];
      lim[j] = periodic_cf(rev);
    }
    QuadSurd mx = lim[0], mn = lim[0];
    for (const auto& v : lim) {
      if (v > mx) mx = v;
      if (v < mn) mn = v;
    }
    q.sigma_exact = mx.reciprocal();
    q.tau_exact = mn.reciprocal();
    std::optional<QuadSurd> sp;
    for (long j = 0; j < n; ++j) {
      if (per[j] > 1) {
        const QuadSurd& prev = lim[((j - 1) % n + n) % n];
        if (!sp || prev > *sp) sp = prev;
      }
    }
    q.sigma = q.sigma_exact->value(prec);
    q.tau = q.tau_exact->value(prec);
    if (sp) {
      q.sigma_prime_exact = sp->reciprocal();
      q.sigma_prime = q.sigma_prime_exact->value(prec);
    } else {
      q.sigma_prime_infinite = true;
      q.sigma_prime = BigReal::inf(1, prec);
    }
    q.exact = true;
    return q;
  }
  if (K < 4) throw Error(Errc::BadWindow, "window K must be >= 4");
  q.window_lo = K / 2;
  q.window_hi = K;
  std::optional<BigReal> mx, mn, spmax;
  for (long k = q.window_lo; k <= q.window_hi; ++k) {
    BigReal v = cf_backward(prog, k, prec);
    if (!mx || v > *mx) mx = v;
    if (!mn || v < *mn) mn = v;
    if (prog.s(k + 2) > 1 && (!spmax || v > *spmax)) spmax = v;
  }
  BigReal one(1L, prec);
  q.sigma = one / *mx;
  q.tau = one / *mn;
  if (spmax) {
    q.sigma_prime = one / *spmax;
  } else {
    q.sigma_prime_infinite = true;
    q.sigma_prime = BigReal::inf(1, prec);
  }
  return q;
}

BigReal h_of_sigma(const BigReal& sigma) {
  BigReal half = sigma / BigReal(2L, sigma.prec());
  BigReal one(1L, sigma.prec());
  return half + one - sqrt(half * half + one);
}

std::vector<long> characteristic_word(const std::function<long(long)>& s_prime, long a, long b, size_t n) {
  std::vector<long> prev{b};
  std::vector<long> cur;
  for (long i = 0; i < s_prime(1) - 1; ++i) cur.push_back(b);
  cur.push_back(a);
  long k = 1;
  while (cur.size() < n) {
    std::vector<long> next;
    long e = s_prime(k + 1);
    for (long i = 0; i < e; ++i) next.insert(next.end(), cur.begin(), cur.end());
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
    ++k;
  }
  cur.resize(n);
  return cur;
}

bool cassaigne_member(const std::vector<long>& prefix, const std::vector<long>& period, long K) {
  QuadSurd base = eventually_periodic_cf(prefix, period);
  std::vector<long> pre = prefix;
  std::vector<long> per = period;
  for (long k = 1; k <= K; ++k) {
    // shift by one letter
    if (!pre.empty()) {
      pre.erase(pre.begin());
    } else {
      std::rotate(per.begin(), per.begin() + 1, per.end());
    }
    if (eventually_periodic_cf(pre, per) > base) return false;
  }
  return true;
}

QuadSurd delta_an(long a, long n) {
  QuadSurd u = periodic_cf({n, a});
  return u.mobius(2, 0, 0, 1);
}

std::vector<SpectrumEndpoint> spectrum_endpoints(mpfr_prec_t prec) {
  std::vector<SpectrumEndpoint> out;
  const std::pair<long, long> an[] = {{1, 1}, {1, 2}, {2, 2}, {3, 3}};
  for (auto [a, n] : an) {
    QuadSurd d = delta_an(a, n);
    out.push_back({"delta_" + std::to_string(a) + "," + std::to_string(n), d.value(prec), d});
  }
  return out;
}

std::vector<std::pair<QuadSurd, std::optional<QuadSurd>>> spectrum_intervals() {
  QuadSurd d11 = delta_an(1, 1), d12 = delta_an(1, 2), d22 = delta_an(2, 2), d33 = delta_an(3, 3);
  return {
      {d11, d11.mobius(1, 1, 0, 1)},
      {d22, d12.mobius(1, 1, 0, 1)},
      {d33, std::nullopt},
  };
}

}  // namespace sturmlab
