#pragma once

#include <functional>
#include <limits>
#include <string>

#include "apsum/apfun.hpp"

namespace apsum {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Measurement space for norms and moduli. For Stepanov spaces p lies in
// (1, inf]; p == kInf selects the sup form.
struct NormSpace {
  enum class Kind { uniform_periodic, stepanov };

  Kind kind = Kind::stepanov;
  double p = kInf;
  int window_count = 64;        // initial outer-sup sample count
  int max_window_count = 2048;  // doubling cap
  int grid_density = 256;       // sup-scan samples per unit length
  double u_span = 0.0;          // 0 = derive from the spectrum
  // Fastest oscillation expected in a window integrand; > 0 switches the
  // window quadrature to a fixed composite rule sized for that frequency
  // (used for strong means, whose q-th powers have corner points).
  double osc_hint = 0.0;

  static NormSpace uniform();
  static NormSpace stepanov(double p);
  bool is_sup() const { return p == kInf; }
};

// Norm value with the grid/quadrature tolerance attached. Values are
// certified lower bounds that converge to the norm as grids refine.
struct NormResult {
  double value = 0.0;
  double tolerance = 0.0;
};

// Span of window offsets over which the outer sup of the Stepanov norm is
// sampled. 2pi for integer spectra, otherwise a multiple of the slowest
// period, at least 8pi.
double default_u_span(const APFunction& f);

// sup |f| over [-pi, pi] on a dense grid with local refinement.
NormResult sup_norm_periodic(const PeriodicFunction& f);

// Stepanov norm sup_u { (1/pi) int_u^{u+pi} |f|^p }^{1/p}; p = inf gives
// the sup form. Throws invalid_parameter when p <= 1.
NormResult stepanov_norm(const APFunction& f, double p);
NormResult stepanov_norm(const APFunction& f, double p, double u_span,
                         const NormSpace& knobs);

// Norm of an arbitrary function of x in the given space (used for strong
// means and the verification harness).
NormResult function_norm(const std::function<double(double)>& g,
                         const NormSpace& space, double u_span_hint);

// Modulus of continuity sup_{|t| <= delta} ||f(.+t) - f||_space.
NormResult modulus(const APFunction& f, double delta, const NormSpace& space);

// Best uniform approximation of f by trigonometric polynomials of degree
// <= k, by a discrete exchange iteration on an oversampled circle grid.
// Throws no_convergence if the exchange exceeds max_iters.
double best_approx_periodic(const PeriodicFunction& f, int k,
                            double residual_rel_tol = 1e-13,
                            int max_iters = 200);

// Upper bound on the Stepanov best approximation by entire functions of
// exponential type sigma: the norm of the spectral tail above sigma. The
// truncation itself has type <= sigma, so this always dominates the true
// infimum.
double best_approx_stepanov_upper(const APFunction& f, double sigma,
                                  double p);

// Majorant omega_f(1/sigma)_{S^p} from the Jackson-type estimate.
double jackson_rhs(const APFunction& f, double sigma, double p);

}  // namespace apsum
