#include "apsum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "apsum/detail/parallel.hpp"
#include "apsum/detail/quad.hpp"

namespace apsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kT1Tol = 1e-12;

void require_t1(const MatrixRow& row) {
  if (!check_T1(row))
    throw row_sum_violation("row " + std::to_string(row.n) +
                            " does not sum to 1");
}

// int_0^T 2 cos(mu t) Psi_{lambda,eta}(t) dt, cached per argument set.
// The quadrature is linear in the spectral factorization of
// f(x+t) + f(x-t) = sum_nu beta_nu(x) 2 cos(lambda_nu t), so these scalar
// weights carry the whole x-family of integrals.
struct WeightKey {
  double mu, lambda, eta, T, tol;
  bool operator<(const WeightKey& o) const {
    return std::tie(mu, lambda, eta, T, tol) <
           std::tie(o.mu, o.lambda, o.eta, o.T, o.tol);
  }
};

std::map<WeightKey, double> g_weight_cache;
std::mutex g_weight_mutex;

double kernel_frequency_weight(double mu, double lambda, double eta, double T,
                               double rel_tol, int max_depth) {
  const WeightKey key{mu, lambda, eta, T, rel_tol};
  {
    std::lock_guard<std::mutex> lock(g_weight_mutex);
    auto it = g_weight_cache.find(key);
    if (it != g_weight_cache.end()) return it->second;
  }
  auto integrand = [mu, lambda, eta](double t) {
    return 2.0 * std::cos(mu * t) * kernel_psi(lambda, eta, t);
  };
  // One panel per period of the fastest product component mu + eta.
  const double panel = 2.0 * kPi / (mu + eta);
  const double value = detail::integrate_panels<double>(
      integrand, 0.0, T, panel, rel_tol, max_depth);
  std::lock_guard<std::mutex> lock(g_weight_mutex);
  g_weight_cache.emplace(key, value);
  return value;
}

}  // namespace

GammaSequence GammaSequence::half_gap(double alpha) {
  if (!(alpha > 0.0)) throw invalid_parameter("alpha must be positive");
  GammaSequence g;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "half_gap:%g", alpha);
  g.name_ = buf;
  g.rule_ = [alpha](int k) { return alpha * k / 2.0; };
  return g;
}

GammaSequence GammaSequence::integer() {
  GammaSequence g;
  g.name_ = "integer";
  g.rule_ = [](int k) { return static_cast<double>(k); };
  return g;
}

GammaSequence GammaSequence::custom(std::function<double(int)> rule,
                                    std::string name) {
  GammaSequence g;
  g.rule_ = std::move(rule);
  g.name_ = std::move(name);
  return g;
}

double GammaSequence::operator()(int k) const {
  if (!rule_) throw invalid_parameter("empty gamma sequence");
  const double v = rule_(k);
  if (!(v >= 0.0))
    throw invalid_parameter("gamma_k must be nonnegative at k = " +
                            std::to_string(k));
  return v;
}

QuadratureSpec default_quadrature(double alpha, double rel_tol) {
  if (!(alpha > 0.0) || !(rel_tol > 0.0))
    throw invalid_parameter("alpha and rel_tol must be positive");
  return {4.0 / (kPi * alpha * rel_tol), rel_tol, 40};
}

APFunction partial_sum(const APFunction& f, double gamma) {
  if (!(gamma >= 0.0)) throw invalid_parameter("gamma must be nonnegative");
  return f.truncated(gamma);
}

StarPartialSum star_partial_sum(const APFunction& f, double alpha, int k) {
  if (!(alpha > 0.0)) throw invalid_parameter("alpha must be positive");
  if (k < 0) throw invalid_parameter("k must be nonnegative");
  const double lo = alpha * k / 2.0;
  const double hi = alpha * (k + 1) / 2.0;
  std::optional<std::size_t> occupied;
  for (std::size_t i = 0; i < f.terms().size(); ++i) {
    const double freq = f.terms()[i].frequency;
    if (freq > lo && freq < hi) {
      if (occupied)
        throw gap_violation("two exponents inside (" + std::to_string(lo) +
                            ", " + std::to_string(hi) + ")");
      occupied = i;
    }
  }
  return {partial_sum(f, lo), occupied};
}

double kernel_psi(double lambda, double eta, double t) {
  if (!(eta > lambda) || !(lambda >= 0.0))
    throw invalid_parameter("kernel requires 0 <= lambda < eta");
  if (t == 0.0) return (eta + lambda) / (2.0 * kPi);
  return 2.0 * std::sin(0.5 * (eta - lambda) * t) *
         std::sin(0.5 * (eta + lambda) * t) / (kPi * (eta - lambda) * t * t);
}

IntegralResult integral_partial_sum(const APFunction& f, double x,
                                    double lambda_k, double alpha,
                                    const QuadratureSpec& quad) {
  if (!(alpha > 0.0) || !(lambda_k >= 0.0))
    throw invalid_parameter("need alpha > 0 and lambda_k >= 0");
  if (!(quad.truncation > 0.0) || !(quad.rel_tol > 0.0))
    throw invalid_parameter("quadrature spec requires T > 0 and rel_tol > 0");
  if (!verify_gap(f, alpha))
    throw precondition_violation("spectrum gaps fall below alpha");
  const double eta = lambda_k + alpha;
  for (const auto& t : f.terms())
    if (t.frequency > lambda_k && t.frequency < eta)
      throw precondition_violation(
          "exponent " + std::to_string(t.frequency) + " inside (" +
          std::to_string(lambda_k) + ", " + std::to_string(eta) + ")");

  const double scale = std::max(f.coeff_abs_sum(), 1e-300);
  const double T = quad.truncation;
  const double tail = 4.0 * scale / (kPi * alpha * T);
  const int nfreq = static_cast<int>(f.terms().size());

  // Scalar weight per spectral frequency; missing entries are computed in
  // parallel, everything else is a cache hit.
  std::vector<double> weights(nfreq);
  detail::parallel_for(nfreq, [&](int i) {
    weights[i] = kernel_frequency_weight(f.terms()[i].frequency, lambda_k,
                                         eta, T, quad.rel_tol,
                                         quad.max_subdivisions);
  });

  cplx total{0.0, 0.0};
  for (int i = 0; i < nfreq; ++i) {
    const auto& term = f.terms()[i];
    cplx beta = term.coeff_pos;
    if (term.frequency > 0.0) {
      const double a = term.frequency * x;
      const cplx e{std::cos(a), std::sin(a)};
      beta = term.coeff_pos * e + term.coeff_neg * std::conj(e);
    }
    total += beta * weights[i];
  }
  return {total, tail};
}

RowEvaluator::RowEvaluator(const APFunction& f, const MatrixRow& row,
                           const GammaSequence& gammas, double q)
    : f_(&f), q_(q) {
  if (!(q > 0.0)) throw invalid_parameter("q must be positive");
  require_t1(row);
  double prev_gamma = -1.0;
  std::map<std::size_t, double> grouped;
  for (std::size_t k = 0; k < row.weights.size(); ++k) {
    const double gamma = gammas(static_cast<int>(k));
    if (gamma < prev_gamma)
      throw invalid_parameter("gamma sequence must be nondecreasing");
    prev_gamma = gamma;
    if (row.weights[k] == 0.0) continue;
    grouped[f.cut_index(gamma)] += row.weights[k];
  }
  cut_weights_.assign(grouped.begin(), grouped.end());
}

cplx RowEvaluator::transform(double x) const {
  const auto& terms = f_->terms();
  // prefix[j] = value of the first j spectral terms at x
  cplx prefix{0.0, 0.0};
  cplx total{0.0, 0.0};
  std::size_t done = 0;
  for (const auto& [cut, weight] : cut_weights_) {
    for (; done < cut; ++done) {
      const auto& t = terms[done];
      if (t.frequency == 0.0) {
        prefix += t.coeff_pos;
      } else {
        const double a = t.frequency * x;
        const cplx e{std::cos(a), std::sin(a)};
        prefix += t.coeff_pos * e + t.coeff_neg * std::conj(e);
      }
    }
    total += weight * prefix;
  }
  return total;
}

double RowEvaluator::strong_mean(double x) const {
  const auto& terms = f_->terms();
  const std::size_t nterms = terms.size();
  // The deviation at cut j is |S_gamma f - f| = |sum of terms from j on|,
  // so one reverse sweep over the spectrum serves every cut.
  const bool real = f_->real_valued();
  double suffix_re = 0.0;
  cplx suffix{0.0, 0.0};
  double acc = 0.0;
  auto it = cut_weights_.rbegin();
  for (std::size_t j = nterms;; --j) {
    while (it != cut_weights_.rend() && it->first == j) {
      const double d = real ? std::fabs(suffix_re) : std::abs(suffix);
      if (q_ == 1.0)
        acc += it->second * d;
      else if (q_ == 2.0)
        acc += it->second * d * d;
      else
        acc += it->second * std::pow(d, q_);
      ++it;
    }
    if (j == 0) break;
    const auto& t = terms[j - 1];
    if (real) {
      if (t.frequency == 0.0) {
        suffix_re += t.coeff_pos.real();
      } else {
        const double a = t.frequency * x;
        suffix_re += 2.0 * (t.coeff_pos.real() * std::cos(a) -
                            t.coeff_pos.imag() * std::sin(a));
      }
    } else {
      cplx v = t.coeff_pos;
      if (t.frequency != 0.0) {
        const double a = t.frequency * x;
        const cplx e{std::cos(a), std::sin(a)};
        v = t.coeff_pos * e + t.coeff_neg * std::conj(e);
      }
      suffix += v;
    }
  }
  if (q_ == 1.0) return acc;
  if (q_ == 2.0) return std::sqrt(acc);
  return std::pow(acc, 1.0 / q_);
}

cplx matrix_transform(const APFunction& f, const MatrixRow& row,
                      const GammaSequence& gammas, double x) {
  return RowEvaluator(f, row, gammas, 1.0).transform(x);
}

double strong_mean(const APFunction& f, const MatrixRow& row,
                   const GammaSequence& gammas, double q, double x) {
  return RowEvaluator(f, row, gammas, q).strong_mean(x);
}

NormResult strong_mean_norm(const APFunction& f, const MatrixRow& row,
                            const GammaSequence& gammas, double q,
                            const NormSpace& space) {
  const RowEvaluator eval(f, row, gammas, q);
  NormSpace tuned = space;
  if (tuned.osc_hint == 0.0) tuned.osc_hint = f.max_frequency();
  return function_norm([&eval](double x) { return eval.strong_mean(x); },
                       tuned, default_u_span(f));
}

}  // namespace apsum
