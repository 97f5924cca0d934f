#include "sturmlab/logform.hpp"

#include <sstream>

namespace sturmlab {

LogForm LogForm::times_delta() const {
  if (has_delta()) throw Error(Errc::OutOfRange, "delta^2 term in a log form");
  return {0, a0, 0, a1};
}

BigReal LogForm::eval(const LogBasis& b) const {
  mpfr_prec_t p = std::max(b.B0.prec(), b.B1.prec());
  BigReal c0 = BigReal(a0, p) + BigReal(b0, p) * b.delta;
  BigReal c1 = BigReal(a1, p) + BigReal(b1, p) * b.delta;
  return c0 * b.B0 + c1 * b.B1;
}

std::string LogForm::str() const {
  std::ostringstream os;
  os << "(" << a0 << "+" << b0 << "d)B0+(" << a1 << "+" << b1 << "d)B1";
  return os.str();
}

LogForm scale(long c, long d, const LogForm& x) {
  LogForm r = Int(c) * x;
  if (d != 0) r = r + Int(d) * x.times_delta();
  return r;
}

}  // namespace sturmlab
