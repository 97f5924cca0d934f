#pragma once

#include <map>
#include <string>
#include <vector>

#include "sturmlab/exactlin.hpp"
#include "sturmlab/matseq.hpp"

namespace sturmlab {

// y_i (i >= -2) and z_j (j >= -1) over a matrix sequence.
class ApproxSeq {
 public:
  explicit ApproxSeq(MatrixSequence& seq) : seq_(seq) {}

  MatrixSequence& mseq() { return seq_; }
  const SturmianProgram& prog() const { return seq_.prog(); }

  const SymVec& y(long i);
  const RatVec& z(long j);
  // det(w_2) z_j
  SymVec z_int(long j);

 private:
  MatrixSequence& seq_;
  std::map<long, SymVec> y_;
  std::map<long, RatVec> z_;
};

struct IdentityCheck {
  std::string name;
  long checked = 0;
  bool ok = true;
  long witness = 0;  // first failing index
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  long i_max = 0;
  bool all_ok() const;
  const IdentityCheck* find(const std::string& name) const;
};

// All exact identities for indices up to i_max.
IdentityReport verify_identities(ApproxSeq& ap, long i_max);

struct ContentRow {
  long i;
  Int content_y;
  bool y_divides_detN;
  Int content_z;  // content of det(w_2) z_i
  bool z_integral;
  bool z_divides_bound;
};

struct ContentReport {
  std::vector<ContentRow> rows;
  Int bound;  // det(w_2)^2 det(N)^2 |Tr(JN)|
  Int max_content_y;
  bool cor44_hypotheses = false;
  bool all_ok() const;
};

ContentReport contents_report(ApproxSeq& ap, long i_max);
bool cor44_hypotheses(MatrixSequence& seq);

struct GrayPoint {
  long m;
  Int a, p, q;  // partial quotient a_m (a_{-1} unused), convergent p/q
  SymVec x;
  Int content;
  Int alpha, beta;
};

struct GrayFan {
  long i;
  Int t_next, d_next;  // Tr, det of w_{i+1}
  Int d_i, d_i2;
  Int lambda;
  std::vector<GrayPoint> pts;  // m = -1 .. r_i
  bool endpoints_ok = false;   // x_{-1} = y_i, x_r = +-y_{i+1}
  bool recurrence_ok = false;
  bool wedge_ok = false;       // x_m ^ x_{m+1} = +-d_i z_{i+1}
  bool content_product_ok = false;        // c_m c_{m+1} | d_i
  bool content_product_wedge_ok = false;  // c_m c_{m+1} | content(y_{i-2} ^ y_i) = content(d_i z_{i+1})
  bool content_gcd_ok = false;
  bool decomposition_ok = false;  // lambda alpha / c_m and lambda beta / c_m integral
  bool all_ok() const {
    return endpoints_ok && recurrence_ok && wedge_ok && content_product_ok && content_gcd_ok &&
           decomposition_ok;
  }
};

GrayFan gray_fan(ApproxSeq& ap, long i);

// floor-based continued fraction of num/den (den != 0)
std::vector<Int> cf_expand(Int num, Int den);

}  // namespace sturmlab
