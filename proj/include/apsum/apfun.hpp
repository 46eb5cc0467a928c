#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "apsum/errors.hpp"

namespace apsum {

using cplx = std::complex<double>;

// One spectral line. coeff_pos multiplies e^{+i freq x}, coeff_neg
// multiplies e^{-i freq x}. A zero-frequency term carries a single real
// amplitude in coeff_pos and must have coeff_neg == 0.
struct SpectralTerm {
  double frequency = 0.0;
  cplx coeff_pos{0.0, 0.0};
  cplx coeff_neg{0.0, 0.0};
};

// Finite spectral model of an almost periodic function
//
//   f(x) = A_0 + sum_nu ( A_nu e^{i lambda_nu x} + A_{-nu} e^{-i lambda_nu x} )
//
// with 0 <= lambda_1 < lambda_2 < ... and consecutive gaps
// lambda_{nu+1} - lambda_nu >= alpha between the positive exponents.
// The gap between lambda_0 = 0 and lambda_1 is not constrained.
// Instances are immutable after construction; all operations are pure.
class APFunction {
 public:
  APFunction() = default;

  // Terms must be sorted by strictly increasing frequency. Terms with both
  // coefficients zero are rejected for positive frequencies. Throws
  // gap_violation or invalid_parameter.
  APFunction(std::vector<SpectralTerm> terms, double alpha);

  double alpha() const { return alpha_; }
  bool real_valued() const { return real_valued_; }
  const std::vector<SpectralTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  cplx evaluate(double x) const;
  // Real-arithmetic evaluation; requires real_valued().
  double evaluate_real(double x) const;

  double max_frequency() const;           // 0 when empty or constant
  double min_positive_frequency() const;  // +inf when none
  // sum |A_nu| + |A_{-nu}|; an upper bound for sup |f|.
  double coeff_abs_sum() const;

  // Number of leading terms with frequency <= cutoff (boundary inclusive).
  std::size_t cut_index(double cutoff) const;

  APFunction shifted(double h) const;          // x -> f(x + h)
  APFunction scaled(double s) const;           // s * f
  APFunction truncated(double cutoff) const;   // frequencies <= cutoff
  APFunction tail_above(double cutoff) const;  // frequencies >  cutoff
  APFunction shift_difference(double t) const; // f(. + t) - f(.)

  // Term-wise sum on the merged spectrum; zero results are dropped.
  static APFunction merge(const APFunction& a, const APFunction& b,
                          double alpha);

 private:
  std::vector<SpectralTerm> terms_;
  double alpha_ = 1.0;
  bool real_valued_ = true;
};

inline cplx evaluate(const APFunction& f, double x) { return f.evaluate(x); }

// f(x+t) + f(x-t) - 2 f(x)
cplx phi(const APFunction& f, double x, double t);

// True iff every consecutive gap between positive exponents is >= alpha.
bool verify_gap(const APFunction& f, double alpha);

// (1/L) int_0^L f(t) e^{-i lambda t} dt by adaptive quadrature. Converges
// to the coefficient at lambda as L grows, to 0 off the spectrum. Throws
// tolerance_not_met when the subdivision budget is exhausted.
cplx mean_coefficient(const APFunction& f, double lambda, double L,
                      double rel_tol = 1e-10, int max_depth = 48);

// 2pi-periodic trigonometric polynomial
//   f(x) = a0/2 + sum_{nu=1}^{N} ( a_nu cos(nu x) + b_nu sin(nu x) ).
struct PeriodicFunction {
  double a0 = 0.0;
  std::vector<std::pair<double, double>> coeffs;  // (a_nu, b_nu), nu = 1..N

  int degree() const { return static_cast<int>(coeffs.size()); }
  double evaluate(double x) const;
  // Lossless conversion to the spectral form (integer exponents, alpha = 1).
  APFunction to_ap() const;
};

// Inverse of PeriodicFunction::to_ap. Requires a real-valued function with
// integer frequencies; throws precondition_violation otherwise.
PeriodicFunction to_periodic(const APFunction& f);

}  // namespace apsum
