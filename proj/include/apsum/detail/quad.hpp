#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "apsum/errors.hpp"

namespace apsum::detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]; nodes and weights from QUADPACK.
inline constexpr double kGkNode[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

inline double abs_value(double v) { return std::fabs(v); }
inline double abs_value(const std::complex<double>& v) { return std::abs(v); }

template <class T, class F>
std::pair<T, double> gk15_panel(F&& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  T kron = kKronrodW[7] * f(mid);
  T gauss = kGaussW[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kGkNode[i];
    T pair_sum = f(mid - dx) + f(mid + dx);
    kron += kKronrodW[i] * pair_sum;
    if (i % 2 == 1) gauss += kGaussW[i / 2] * pair_sum;
  }
  kron *= h;
  gauss *= h;
  return {kron, abs_value(kron - gauss)};
}

// Recursive bisection with an absolute error budget split evenly between
// halves. A small relative floor stops subdivision at roundoff level.
template <class T, class F>
T integrate_adaptive(F&& f, double a, double b, double abs_tol,
                     int max_depth) {
  auto [value, err] = gk15_panel<T>(f, a, b);
  if (err <= abs_tol || err <= 1e-15 * (abs_value(value) + 1e-300))
    return value;
  if (max_depth <= 0)
    throw tolerance_not_met("quadrature tolerance not met on [" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            "]");
  const double mid = 0.5 * (a + b);
  return integrate_adaptive<T>(f, a, mid, 0.5 * abs_tol, max_depth - 1) +
         integrate_adaptive<T>(f, mid, b, 0.5 * abs_tol, max_depth - 1);
}

// Like integrate_adaptive, but accepts the panel value once the depth
// budget is exhausted instead of throwing. Used for integrands with
// corner points, where the leftover error is bounded by the per-panel
// budget times a small factor.
template <class T, class F>
T integrate_adaptive_capped(F&& f, double a, double b, double abs_tol,
                            int max_depth) {
  auto [value, err] = gk15_panel<T>(f, a, b);
  if (err <= abs_tol || max_depth <= 0 ||
      err <= 1e-15 * (abs_value(value) + 1e-300))
    return value;
  const double mid = 0.5 * (a + b);
  return integrate_adaptive_capped<T>(f, a, mid, 0.5 * abs_tol,
                                      max_depth - 1) +
         integrate_adaptive_capped<T>(f, mid, b, 0.5 * abs_tol,
                                      max_depth - 1);
}

// Fixed composite rule: n_panels equal GK15 panels, each refined at most
// refine_depth levels. Deterministic cost, scale-invariant decisions.
template <class T, class F>
T integrate_composite(F&& f, double a, double b, int n_panels,
                      double abs_tol, int refine_depth) {
  const double len = (b - a) / n_panels;
  T sum{};
  for (int i = 0; i < n_panels; ++i) {
    const double lo = a + len * i;
    const double hi = (i + 1 == n_panels) ? b : a + len * (i + 1);
    sum += integrate_adaptive_capped<T>(f, lo, hi, abs_tol / n_panels,
                                        refine_depth);
  }
  return sum;
}

// Streams equal-length panels over [a, b] and integrates each adaptively
// with a budget proportional to its length. Suited to oscillatory
// integrands when max_panel matches the fastest oscillation period.
template <class T, class F>
T integrate_panels(F&& f, double a, double b, double max_panel,
                   double abs_tol, int max_depth) {
  const double span = b - a;
  if (span <= 0.0) return T{};
  const long n = std::max(1L, static_cast<long>(std::ceil(span / max_panel)));
  const double len = span / static_cast<double>(n);
  const double per_panel = abs_tol / static_cast<double>(n);
  T sum{};
  T comp{};  // Kahan compensation
  for (long i = 0; i < n; ++i) {
    const double lo = a + len * static_cast<double>(i);
    const double hi = (i + 1 == n) ? b : a + len * static_cast<double>(i + 1);
    T v = integrate_adaptive<T>(f, lo, hi, per_panel, max_depth);
    T y = v - comp;
    T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace apsum::detail
