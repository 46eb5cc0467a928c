#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apsum/apfun.hpp"
#include "apsum/norms.hpp"
#include "apsum/seqclass.hpp"

namespace apsum {

// Cutoff sequence k -> gamma_k, nondecreasing with gamma_0 >= 0.
class GammaSequence {
 public:
  GammaSequence() = default;

  // gamma_k = alpha * k / 2
  static GammaSequence half_gap(double alpha);
  // gamma_k = k (periodic partial sums)
  static GammaSequence integer();
  static GammaSequence custom(std::function<double(int)> rule,
                              std::string name);

  double operator()(int k) const;
  const std::string& name() const { return name_; }

 private:
  std::function<double(int)> rule_;
  std::string name_;
};

struct QuadratureSpec {
  double truncation = 0.0;  // upper limit replacing infinity
  double rel_tol = 1e-6;
  int max_subdivisions = 40;
};

// Truncation chosen so the documented tail bound 4 ||f|| / (pi alpha T)
// stays below rel_tol relative to ||f||.
QuadratureSpec default_quadrature(double alpha, double rel_tol = 1e-6);

// Terms with |lambda_nu| <= gamma, boundary inclusive.
APFunction partial_sum(const APFunction& f, double gamma);

struct StarPartialSum {
  APFunction sum;                      // S_{alpha k / 2} f
  std::optional<std::size_t> occupied; // index of the exponent inside
                                       // (alpha k/2, alpha (k+1)/2), if any
};

// Partial sum at cutoff alpha*k/2 together with the at-most-one exponent
// occupying the open interval above the cutoff. Two exponents there would
// contradict the gap condition; that raises gap_violation.
StarPartialSum star_partial_sum(const APFunction& f, double alpha, int k);

// Psi_{lambda,eta}(t) = 2 sin((eta-lambda)t/2) sin((eta+lambda)t/2)
//                       / (pi (eta-lambda) t^2),
// extended by its limit (eta+lambda)/(2 pi) at t = 0.
double kernel_psi(double lambda, double eta, double t);

struct IntegralResult {
  cplx value{0.0, 0.0};
  double tail_bound = 0.0;  // documented bound on the discarded tail
};

// S_{lambda_k} f(x) as the truncated integral
//   int_0^T { f(x+t) + f(x-t) } Psi_{lambda_k, lambda_k + alpha}(t) dt
// by oscillation-aware adaptive quadrature. Requires gaps >= alpha and no
// exponent inside the open interval (lambda_k, lambda_k + alpha).
IntegralResult integral_partial_sum(const APFunction& f, double x,
                                    double lambda_k, double alpha,
                                    const QuadratureSpec& quad);

// Precomputed structure for repeated evaluation of the matrix transform
// and the strong mean of one (f, row, gamma, q) combination at many x.
class RowEvaluator {
 public:
  RowEvaluator(const APFunction& f, const MatrixRow& row,
               const GammaSequence& gammas, double q);

  // T_{n,A,gamma} f(x) = sum_k a_{n,k} S_{gamma_k} f(x)
  cplx transform(double x) const;
  // T^q_{n,A,gamma} f(x) = { sum_k a_{n,k} |S_{gamma_k} f(x) - f(x)|^q }^{1/q}
  double strong_mean(double x) const;

 private:
  const APFunction* f_;
  double q_;
  // distinct cut index -> accumulated row weight
  std::vector<std::pair<std::size_t, double>> cut_weights_;
};

cplx matrix_transform(const APFunction& f, const MatrixRow& row,
                      const GammaSequence& gammas, double x);

double strong_mean(const APFunction& f, const MatrixRow& row,
                   const GammaSequence& gammas, double q, double x);

// Norm of x -> strong_mean(f, row, gammas, q, x) in the given space.
NormResult strong_mean_norm(const APFunction& f, const MatrixRow& row,
                            const GammaSequence& gammas, double q,
                            const NormSpace& space);

}  // namespace apsum
