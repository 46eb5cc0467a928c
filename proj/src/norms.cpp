#include "apsum/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "apsum/detail/quad.hpp"
#include "apsum/detail/scan.hpp"

namespace apsum {

namespace {

constexpr double kPi = std::numbers::pi;

std::function<double(double)> abs_eval(const APFunction& f) {
  if (f.real_valued())
    return [&f](double x) { return std::fabs(f.evaluate_real(x)); };
  return [&f](double x) { return std::abs(f.evaluate(x)); };
}

void check_exponent(double p) {
  if (!(p > 1.0))
    throw invalid_parameter("Stepanov exponent must satisfy p > 1");
}

// sup of g over [a, b] by dense scan plus local zooms.
NormResult sup_on_interval(const std::function<double(double)>& g, double a,
                           double b, int grid_density) {
  const double len = b - a;
  int samples = static_cast<int>(grid_density * len);
  samples = std::clamp(samples, 512, 1 << 20);
  const auto best = detail::scan_max(g, a, b, samples, 4, 32);
  return {best.value, 1e-9 * best.value + 1e-12};
}

// (1/pi) int_u^{u+pi} |g|^p dt. With an oscillation hint the quadrature is
// a fixed composite rule sized for that frequency; corner points of the
// integrand then cost a bounded refinement depth instead of a deep chase.
double window_integral(const std::function<double(double)>& g, double p,
                       double u, double osc_hint) {
  const bool square = (p == 2.0);
  auto integrand = [&g, p, square](double t) {
    const double v = g(t);
    return square ? v * v : std::pow(v, p);
  };
  if (osc_hint > 0.0) {
    const int panels =
        std::clamp(static_cast<int>(4.0 * std::ceil(osc_hint)) + 4, 8, 2048);
    const auto probe = detail::gk15_panel<double>(integrand, u, u + kPi);
    const double tol = std::max(std::fabs(probe.first), 1e-13) * 1e-7;
    return detail::integrate_composite<double>(integrand, u, u + kPi, panels,
                                               tol, 6) /
           kPi;
  }
  const auto probe = detail::gk15_panel<double>(integrand, u, u + kPi);
  const double tol = std::max(std::fabs(probe.first), 1e-13) * 1e-9;
  return detail::integrate_adaptive_capped<double>(integrand, u, u + kPi,
                                                   tol, 30) /
         kPi;
}

// max_u W(u) over [0, span]: coarse grid of n windows refined by local
// zooms; n doubles until the refined maximum stabilizes.
NormResult windowed_norm(const std::function<double(double)>& g, double p,
                         double span, const NormSpace& knobs) {
  auto wfun = [&g, p, &knobs](double u) {
    return window_integral(g, p, u, knobs.osc_hint);
  };
  int n = std::max(knobs.window_count, 8);
  double prev = -1.0, cur = 0.0, rel_change = 0.0;
  while (true) {
    cur = detail::scan_max(wfun, 0.0, span, n, 2, 16).value;
    if (prev >= 0.0) {
      rel_change = std::fabs(cur - prev) / std::max(cur, 1e-300);
      if (rel_change < 1e-6) break;
    }
    if (2 * n > knobs.max_window_count) break;
    prev = cur;
    n *= 2;
  }
  const double value = std::pow(cur, 1.0 / p);
  const double tol =
      value > 0.0 ? value * (rel_change / p + 1e-9) + 1e-12 : 1e-12;
  return {value, tol};
}

}  // namespace

NormSpace NormSpace::uniform() {
  NormSpace s;
  s.kind = Kind::uniform_periodic;
  s.p = kInf;
  return s;
}

NormSpace NormSpace::stepanov(double p) {
  check_exponent(p);
  NormSpace s;
  s.kind = Kind::stepanov;
  s.p = p;
  return s;
}

double default_u_span(const APFunction& f) {
  bool integer_spectrum = true;
  for (const auto& t : f.terms())
    if (std::fabs(t.frequency - std::round(t.frequency)) > 1e-9) {
      integer_spectrum = false;
      break;
    }
  if (integer_spectrum) return 2.0 * kPi;
  const double lambda_min = f.min_positive_frequency();
  if (!std::isfinite(lambda_min)) return 2.0 * kPi;
  return std::max(8.0 * kPi, 4.0 * (2.0 * kPi / lambda_min));
}

NormResult sup_norm_periodic(const PeriodicFunction& f) {
  const int samples = std::max(2048, 32 * (f.degree() + 1));
  auto g = [&f](double x) { return std::fabs(f.evaluate(x)); };
  const auto best = detail::scan_max(g, -kPi, kPi, samples, 4, 32);
  return {best.value, 1e-9 * best.value + 1e-12};
}

NormResult stepanov_norm(const APFunction& f, double p) {
  return stepanov_norm(f, p, default_u_span(f), NormSpace::stepanov(p));
}

NormResult stepanov_norm(const APFunction& f, double p, double u_span,
                         const NormSpace& knobs) {
  check_exponent(p);
  if (f.empty()) return {0.0, 0.0};
  auto g = abs_eval(f);
  if (p == kInf) return sup_on_interval(g, 0.0, u_span + kPi, knobs.grid_density);
  return windowed_norm(g, p, u_span, knobs);
}

NormResult function_norm(const std::function<double(double)>& g,
                         const NormSpace& space, double u_span_hint) {
  auto ag = [&g](double x) { return std::fabs(g(x)); };
  if (space.kind == NormSpace::Kind::uniform_periodic)
    return sup_on_interval(ag, -kPi, kPi, space.grid_density);
  check_exponent(space.p);
  double span = space.u_span > 0.0 ? space.u_span : u_span_hint;
  if (!(span > 0.0)) span = 8.0 * kPi;
  if (space.is_sup()) return sup_on_interval(ag, 0.0, span + kPi, space.grid_density);
  return windowed_norm(ag, space.p, span, space);
}

NormResult modulus(const APFunction& f, double delta, const NormSpace& space) {
  if (delta < 0.0) throw invalid_parameter("delta must be nonnegative");
  if (delta == 0.0 || f.empty()) return {0.0, 0.0};
  const double span = default_u_span(f);
  double inner_tol = 0.0;
  auto norm_at = [&](double t) {
    const APFunction diff = f.shift_difference(t);
    if (diff.empty()) return 0.0;
    NormResult r;
    if (space.kind == NormSpace::Kind::uniform_periodic)
      r = sup_on_interval(abs_eval(diff), -kPi, kPi, space.grid_density);
    else
      r = stepanov_norm(diff, space.p, span, space);
    inner_tol = std::max(inner_tol, r.tolerance);
    return r.value;
  };
  // The sup over |t| <= delta reduces to t in [0, delta] since the shifted
  // difference at -t has the same norm. Sample counts follow the cost of
  // one inner norm evaluation.
  detail::ScanMax best;
  if (space.kind == NormSpace::Kind::uniform_periodic)
    best = detail::scan_max(norm_at, 0.0, delta, 64, 3, 32);
  else if (space.is_sup())
    best = detail::scan_max(norm_at, 0.0, delta, 32, 2, 16);
  else
    best = detail::scan_max(norm_at, 0.0, delta, 16, 1, 16);
  return {best.value, best.value * 2e-6 + inner_tol + 1e-12};
}

namespace {

// Solves the square system rows * x = rhs in place; partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> rows,
                                std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(rows[r][col]) > std::fabs(rows[pivot][col])) pivot = r;
    std::swap(rows[col], rows[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    const double d = rows[col][col];
    if (d == 0.0) throw no_convergence("singular exchange system");
    for (int r = col + 1; r < n; ++r) {
      const double factor = rows[r][col] / d;
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c) rows[r][c] -= factor * rows[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= rows[r][c] * x[c];
    x[r] = s / rows[r][r];
  }
  return x;
}

}  // namespace

namespace {

struct Extremum {
  double x = 0.0;
  double value = 0.0;  // |r| at the refined position
  int sign = 1;
};

}  // namespace

double best_approx_periodic(const PeriodicFunction& f, int k,
                            double residual_rel_tol, int max_iters) {
  if (k < 0) throw invalid_parameter("degree must be nonnegative");
  const int deg = f.degree();
  if (k >= deg) return 0.0;  // f is its own approximant

  const int m = 2 * k + 1;  // basis 1, cos x, sin x, ..., cos kx, sin kx
  const int R = m + 1;      // reference size; even, consistent on the circle
  const int M = std::max(16 * (deg + k + 1), 8 * R);

  auto basis_at = [k](double x, std::vector<double>& row) {
    row[0] = 1.0;
    for (int j = 1; j <= k; ++j) {
      row[2 * j - 1] = std::cos(j * x);
      row[2 * j] = std::sin(j * x);
    }
  };
  std::vector<double> sol(R, 0.0), row_buf(m);
  auto residual = [&](double x) {
    basis_at(x, row_buf);
    double px = 0.0;
    for (int c = 0; c < m; ++c) px += sol[c] * row_buf[c];
    return f.evaluate(x) - px;
  };

  double scale = 1.0;
  for (int i = 0; i < M; ++i)
    scale = std::max(scale, std::fabs(f.evaluate(-kPi + 2.0 * kPi * i / M)));

  // reference of cyclically alternating extremum positions
  std::vector<double> ref(R);
  std::vector<int> sgn(R);
  for (int j = 0; j < R; ++j) {
    ref[j] = -kPi + 2.0 * kPi * j / R;
    sgn[j] = (j % 2 == 0) ? 1 : -1;
  }

  std::vector<double> rx(M), rv(M);
  for (int i = 0; i < M; ++i) rx[i] = -kPi + 2.0 * kPi * i / M;

  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<std::vector<double>> rows(R, std::vector<double>(R));
    std::vector<double> rhs(R);
    for (int j = 0; j < R; ++j) {
      basis_at(ref[j], row_buf);
      for (int c = 0; c < m; ++c) rows[j][c] = row_buf[c];
      rows[j][m] = sgn[j];
      rhs[j] = f.evaluate(ref[j]);
    }
    const auto s = solve_dense(std::move(rows), std::move(rhs));
    std::copy(s.begin(), s.end(), sol.begin());
    const double level = std::fabs(sol[m]);

    for (int i = 0; i < M; ++i) rv[i] = residual(rx[i]);

    // one candidate per cyclic sign run of the residual, each refined to
    // the local extremum of |r| within its bracket; exact zeros are
    // transparent to the sign bookkeeping
    int start = -1;
    {
      int prev_sign = 0;
      for (int i = M - 1; i >= 0; --i)
        if (rv[i] != 0.0) {
          prev_sign = rv[i] > 0.0 ? 1 : -1;
          break;
        }
      if (prev_sign != 0)
        for (int i = 0; i < M; ++i) {
          if (rv[i] == 0.0) continue;
          const int s = rv[i] > 0.0 ? 1 : -1;
          if (s != prev_sign) {
            start = i;
            break;
          }
          prev_sign = s;
        }
    }
    std::vector<Extremum> cand;
    double maxr = 0.0;
    if (start >= 0) {
      int i = start;
      while (i < start + M) {
        const double vi = rv[i % M];
        if (vi == 0.0) {
          ++i;
          continue;
        }
        const int sign_run = vi > 0.0 ? 1 : -1;
        int best = i;
        int j = i;
        for (; j < start + M; ++j) {
          const double v = rv[j % M];
          if (v == 0.0 || (v > 0.0 ? 1 : -1) != sign_run) break;
          if (std::fabs(v) > std::fabs(rv[best % M])) best = j;
        }
        // refine within the bracketing neighbors (cyclic, unwrapped x)
        const double x0 = rx[best % M] + 2.0 * kPi * (best / M);
        const double h = 2.0 * kPi / M;
        const auto peak = detail::scan_max(
            [&](double x) { return sign_run * residual(x); }, x0 - h, x0 + h,
            16, 3, 16);
        if (peak.value > 0.0) {
          cand.push_back({peak.arg, peak.value, sign_run});
          maxr = std::max(maxr, peak.value);
        }
        i = j;
      }
      // zeros between runs can leave same-sign cyclic neighbors; merge them
      bool merged = true;
      while (merged && cand.size() > 1) {
        merged = false;
        for (std::size_t j = 0; j < cand.size(); ++j) {
          const std::size_t nxt = (j + 1) % cand.size();
          if (nxt != j && cand[j].sign == cand[nxt].sign) {
            const std::size_t weaker =
                cand[j].value <= cand[nxt].value ? j : nxt;
            cand.erase(cand.begin() + weaker);
            merged = true;
            break;
          }
        }
      }
    } else {
      for (int i = 0; i < M; ++i) maxr = std::max(maxr, std::fabs(rv[i]));
    }

    if (maxr <= 1e-14 * scale) return maxr;
    if (!cand.empty() && static_cast<int>(cand.size()) >= R &&
        maxr - level <= residual_rel_tol * std::max(maxr, 1e-300))
      return std::min(level, maxr);

    if (static_cast<int>(cand.size()) < R) {
      // Degenerate residual (fewer sign runs than the reference needs, as
      // happens when the level comes out zero). Rescue with a single-point
      // exchange at the strongest refined extremum.
      int arg = 0;
      for (int i = 1; i < M; ++i)
        if (std::fabs(rv[i]) > std::fabs(rv[arg])) arg = i;
      const int s_star = rv[arg] >= 0.0 ? 1 : -1;
      const double h = 2.0 * kPi / M;
      const auto peak = detail::scan_max(
          [&](double x) { return s_star * residual(x); }, rx[arg] - h,
          rx[arg] + h, 16, 3, 16);
      double x_star = peak.arg;
      while (x_star >= kPi) x_star -= 2.0 * kPi;
      while (x_star < -kPi) x_star += 2.0 * kPi;
      const int pos = static_cast<int>(
          std::lower_bound(ref.begin(), ref.end(), x_star) - ref.begin());
      const int left = (pos - 1 + R) % R;
      const int right = pos % R;
      const int sh = sol[m] >= 0.0 ? 1 : -1;
      const int chosen = (sgn[left] * sh == s_star) ? left : right;
      ref[chosen] = x_star;
      std::vector<std::pair<double, int>> zipped(R);
      for (int j = 0; j < R; ++j) zipped[j] = {ref[j], sgn[j]};
      std::sort(zipped.begin(), zipped.end());
      for (int j = 0; j < R; ++j) {
        ref[j] = zipped[j].first;
        sgn[j] = zipped[j].second;
      }
      continue;
    }

    // Trim to R extrema: drop the smallest |r|; when that leaves two
    // same-sign cyclic neighbors, drop the smaller of those as well.
    while (static_cast<int>(cand.size()) > R) {
      std::size_t drop = 0;
      for (std::size_t j = 1; j < cand.size(); ++j)
        if (cand[j].value < cand[drop].value) drop = j;
      cand.erase(cand.begin() + drop);
      const std::size_t left = (drop + cand.size() - 1) % cand.size();
      const std::size_t right = drop % cand.size();
      if (left != right && cand[left].sign == cand[right].sign) {
        const std::size_t weaker =
            cand[left].value <= cand[right].value ? left : right;
        cand.erase(cand.begin() + weaker);
      }
    }

    for (int j = 0; j < R; ++j) {
      double x = cand[j].x;
      while (x >= kPi) x -= 2.0 * kPi;
      while (x < -kPi) x += 2.0 * kPi;
      ref[j] = x;
      sgn[j] = cand[j].sign;
    }
    std::vector<std::pair<double, int>> zipped(R);
    for (int j = 0; j < R; ++j) zipped[j] = {ref[j], sgn[j]};
    std::sort(zipped.begin(), zipped.end());
    for (int j = 0; j < R; ++j) {
      ref[j] = zipped[j].first;
      sgn[j] = zipped[j].second;
    }
    for (int j = 0; j < R; ++j)
      if (sgn[j] == sgn[(j + 1) % R])
        throw no_convergence("alternation broke during the exchange");
  }
  throw no_convergence("exchange iteration exceeded its budget");
}

double best_approx_stepanov_upper(const APFunction& f, double sigma,
                                  double p) {
  if (sigma < 0.0) throw invalid_parameter("sigma must be nonnegative");
  const APFunction tail = f.tail_above(sigma);
  if (tail.empty()) return 0.0;
  return stepanov_norm(tail, p, default_u_span(f), NormSpace::stepanov(p))
      .value;
}

double jackson_rhs(const APFunction& f, double sigma, double p) {
  if (!(sigma > 0.0)) throw invalid_parameter("sigma must be positive");
  return modulus(f, 1.0 / sigma, NormSpace::stepanov(p)).value;
}

}  // namespace apsum
