#pragma once

#include <functional>
#include <string>
#include <vector>

#include "apsum/errors.hpp"

namespace apsum {

// One finitely supported row (a_{n,k})_{k=0..K_n} of a summability matrix.
struct MatrixRow {
  int n = 0;
  std::vector<double> weights;  // k = 0 .. K_n

  double weight(std::size_t k) const {
    return k < weights.size() ? weights[k] : 0.0;
  }
  double sum() const;
};

// Row generator with builtin Cesaro and Riesz kinds.
class SummabilityMatrix {
 public:
  enum class Kind { cesaro, riesz, custom };

  // a_{n,k} = 1/(n+1) for k <= n
  static SummabilityMatrix cesaro();
  // a_{n,k} = p_k / P_n with p_k = (k+1)^exponent
  static SummabilityMatrix riesz(double exponent);
  static SummabilityMatrix custom(std::string name,
                                  std::vector<MatrixRow> rows);

  MatrixRow row(int n) const;
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  Kind kind_ = Kind::cesaro;
  std::string name_;
  double exponent_ = 0.0;
  std::vector<MatrixRow> rows_;  // custom only
};

// Row-sum condition sum_k a_{n,k} = 1 within 1e-12.
bool check_T1(const MatrixRow& row);

// Membership in MS, the nonincreasing sequences (trailing zeros included).
bool ms_check(const MatrixRow& row);

// Minimal K with sum_{k>=m} |a_k - a_{k+1}| <= K |a_m|, maximized over
// m = 0..K_n. Ratios 0/0 count as 0; positive variation over a zero a_m
// makes the constant infinite.
double rbvs_constant(const MatrixRow& row);

// Minimal K with sum_{k>=m} |a_k - a_{k+1}| <= K (1/m) sum_{k>=m/2}^{m} |a_k|,
// over m = 1..K_n.
double mrbvs_constant(const MatrixRow& row);

// Minimal K with sum_{k=m}^{2m-1} |a_k - a_{k+1}| <= K |a_m|, over
// m = 1..K_n.
double gm_constant(const MatrixRow& row);

// Minimal K with sum_{k=m}^{2m-1} |a_k - a_{k+1}|
//             <= K sum_{k=[m/c]}^{[cm]} a_k / k,
// over m = 1..K_n, with [.] the integer floor and the right-hand index
// starting at 1 when [m/c] = 0. Requires c > 1.
double gm2beta_constant(const MatrixRow& row, double c);

struct RowClassification {
  int n = 0;
  bool t1 = false;
  bool ms = false;
  double rbvs = 0.0;
  double mrbvs = 0.0;
  double gm = 0.0;
  double gm2beta = 0.0;
  double a_n0 = 0.0;
};

// Per-row membership flags and minimal constants over a finite n range.
// Finiteness over the tested range is a certificate that no violation was
// found up to the bounds, not a proof of class membership.
struct ClassReport {
  std::string matrix_name;
  double c = 2.0;
  std::vector<RowClassification> rows;
  bool all_t1 = true;
  bool all_ms = true;
  double sup_rbvs = 0.0;
  double sup_mrbvs = 0.0;
  double sup_gm = 0.0;
  double sup_gm2beta = 0.0;
};

ClassReport classify(const SummabilityMatrix& matrix, int n_min, int n_max,
                     double c);

}  // namespace apsum
