#include "apsum/apfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "apsum/detail/quad.hpp"

namespace apsum {

namespace {

constexpr double kGapSlack = 1e-12;

bool is_zero(const cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }

bool infer_real_valued(const std::vector<SpectralTerm>& terms) {
  for (const auto& t : terms) {
    if (t.frequency == 0.0) {
      if (t.coeff_pos.imag() != 0.0) return false;
    } else if (t.coeff_neg != std::conj(t.coeff_pos)) {
      return false;
    }
  }
  return true;
}

}  // namespace

APFunction::APFunction(std::vector<SpectralTerm> terms, double alpha)
    : terms_(std::move(terms)), alpha_(alpha) {
  if (!(alpha > 0.0)) throw invalid_parameter("alpha must be positive");
  double prev = -1.0;
  bool prev_positive = false;
  for (const auto& t : terms_) {
    if (!(t.frequency >= 0.0))
      throw invalid_parameter("frequencies must be nonnegative");
    if (t.frequency <= prev)
      throw invalid_parameter("frequencies must be strictly increasing");
    if (t.frequency == 0.0) {
      if (!is_zero(t.coeff_neg) || t.coeff_pos.imag() != 0.0)
        throw invalid_parameter(
            "zero-frequency term must carry a single real amplitude");
    } else {
      if (is_zero(t.coeff_pos) && is_zero(t.coeff_neg))
        throw invalid_parameter("positive-frequency term with zero amplitude");
      if (prev_positive && t.frequency - prev < alpha_ - kGapSlack)
        throw gap_violation("exponent gap " +
                            std::to_string(t.frequency - prev) +
                            " below declared alpha " + std::to_string(alpha_));
      prev_positive = true;
    }
    prev = t.frequency;
  }
  real_valued_ = infer_real_valued(terms_);
}

cplx APFunction::evaluate(double x) const {
  cplx sum{0.0, 0.0};
  for (const auto& t : terms_) {
    if (t.frequency == 0.0) {
      sum += t.coeff_pos;
      continue;
    }
    const double a = t.frequency * x;
    const cplx e{std::cos(a), std::sin(a)};
    sum += t.coeff_pos * e + t.coeff_neg * std::conj(e);
  }
  return sum;
}

double APFunction::evaluate_real(double x) const {
  if (!real_valued_)
    throw precondition_violation("evaluate_real on a complex-valued function");
  double sum = 0.0;
  for (const auto& t : terms_) {
    if (t.frequency == 0.0) {
      sum += t.coeff_pos.real();
      continue;
    }
    const double a = t.frequency * x;
    // A e^{ia} + conj(A) e^{-ia} = 2 Re(A e^{ia})
    sum += 2.0 * (t.coeff_pos.real() * std::cos(a) -
                  t.coeff_pos.imag() * std::sin(a));
  }
  return sum;
}

double APFunction::max_frequency() const {
  return terms_.empty() ? 0.0 : terms_.back().frequency;
}

double APFunction::min_positive_frequency() const {
  for (const auto& t : terms_)
    if (t.frequency > 0.0) return t.frequency;
  return std::numeric_limits<double>::infinity();
}

double APFunction::coeff_abs_sum() const {
  double s = 0.0;
  for (const auto& t : terms_)
    s += std::abs(t.coeff_pos) + std::abs(t.coeff_neg);
  return s;
}

std::size_t APFunction::cut_index(double cutoff) const {
  std::size_t i = 0;
  while (i < terms_.size() && terms_[i].frequency <= cutoff) ++i;
  return i;
}

APFunction APFunction::shifted(double h) const {
  std::vector<SpectralTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.frequency == 0.0) {
      out.push_back(t);
      continue;
    }
    const double a = t.frequency * h;
    const cplx e{std::cos(a), std::sin(a)};
    SpectralTerm s{t.frequency, t.coeff_pos * e, {}};
    s.coeff_neg =
        real_valued_ ? std::conj(s.coeff_pos) : t.coeff_neg * std::conj(e);
    out.push_back(s);
  }
  return APFunction(std::move(out), alpha_);
}

APFunction APFunction::scaled(double s) const {
  std::vector<SpectralTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (s == 0.0) break;
    out.push_back({t.frequency, s * t.coeff_pos, s * t.coeff_neg});
  }
  return APFunction(std::move(out), alpha_);
}

APFunction APFunction::truncated(double cutoff) const {
  std::vector<SpectralTerm> out(terms_.begin(),
                                terms_.begin() + cut_index(cutoff));
  return APFunction(std::move(out), alpha_);
}

APFunction APFunction::tail_above(double cutoff) const {
  std::vector<SpectralTerm> out(terms_.begin() + cut_index(cutoff),
                                terms_.end());
  return APFunction(std::move(out), alpha_);
}

APFunction APFunction::shift_difference(double t) const {
  std::vector<SpectralTerm> out;
  out.reserve(terms_.size());
  for (const auto& term : terms_) {
    if (term.frequency == 0.0) continue;  // constants drop out
    const double a = term.frequency * t;
    const cplx rot{std::cos(a) - 1.0, std::sin(a)};
    SpectralTerm s{term.frequency, term.coeff_pos * rot, {}};
    s.coeff_neg = real_valued_ ? std::conj(s.coeff_pos)
                               : term.coeff_neg * std::conj(rot);
    if (is_zero(s.coeff_pos) && is_zero(s.coeff_neg)) continue;
    out.push_back(s);
  }
  return APFunction(std::move(out), alpha_);
}

APFunction APFunction::merge(const APFunction& a, const APFunction& b,
                             double alpha) {
  std::vector<SpectralTerm> out;
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    SpectralTerm t;
    if (j == b.terms_.size() ||
        (i < a.terms_.size() &&
         a.terms_[i].frequency < b.terms_[j].frequency)) {
      t = a.terms_[i++];
    } else if (i == a.terms_.size() ||
               b.terms_[j].frequency < a.terms_[i].frequency) {
      t = b.terms_[j++];
    } else {
      t = a.terms_[i];
      t.coeff_pos += b.terms_[j].coeff_pos;
      t.coeff_neg += b.terms_[j].coeff_neg;
      ++i;
      ++j;
    }
    if (t.frequency > 0.0 && is_zero(t.coeff_pos) && is_zero(t.coeff_neg))
      continue;
    if (t.frequency == 0.0 && is_zero(t.coeff_pos)) continue;
    out.push_back(t);
  }
  return APFunction(std::move(out), alpha);
}

cplx phi(const APFunction& f, double x, double t) {
  return f.evaluate(x + t) + f.evaluate(x - t) - 2.0 * f.evaluate(x);
}

bool verify_gap(const APFunction& f, double alpha) {
  double prev = -1.0;
  for (const auto& t : f.terms()) {
    if (t.frequency == 0.0) continue;
    if (prev >= 0.0 && t.frequency - prev < alpha - kGapSlack) return false;
    prev = t.frequency;
  }
  return true;
}

cplx mean_coefficient(const APFunction& f, double lambda, double L,
                      double rel_tol, int max_depth) {
  if (!(L > 0.0)) throw invalid_parameter("L must be positive");
  const double scale = std::max(f.coeff_abs_sum(), 1e-300);
  auto integrand = [&f, lambda](double t) {
    const cplx e{std::cos(lambda * t), -std::sin(lambda * t)};
    return f.evaluate(t) * e;
  };
  // Panel length of one period of the fastest oscillation keeps the
  // per-panel error estimate trustworthy.
  const double fastest = f.max_frequency() + std::fabs(lambda);
  const double panel =
      fastest > 0.0 ? 2.0 * std::numbers::pi / fastest : L;
  const cplx total = detail::integrate_panels<cplx>(
      integrand, 0.0, L, panel, rel_tol * scale * L, max_depth);
  return total / L;
}

double PeriodicFunction::evaluate(double x) const {
  double sum = 0.5 * a0;
  for (std::size_t nu = 1; nu <= coeffs.size(); ++nu) {
    const double a = static_cast<double>(nu) * x;
    sum += coeffs[nu - 1].first * std::cos(a) +
           coeffs[nu - 1].second * std::sin(a);
  }
  return sum;
}

APFunction PeriodicFunction::to_ap() const {
  std::vector<SpectralTerm> terms;
  if (a0 != 0.0) terms.push_back({0.0, cplx{0.5 * a0, 0.0}, {}});
  for (std::size_t nu = 1; nu <= coeffs.size(); ++nu) {
    const auto [a, b] = coeffs[nu - 1];
    if (a == 0.0 && b == 0.0) continue;
    const cplx pos{0.5 * a, -0.5 * b};
    terms.push_back({static_cast<double>(nu), pos, std::conj(pos)});
  }
  return APFunction(std::move(terms), 1.0);
}

PeriodicFunction to_periodic(const APFunction& f) {
  if (!f.real_valued())
    throw precondition_violation("periodic form requires a real-valued function");
  PeriodicFunction p;
  for (const auto& t : f.terms()) {
    const double r = std::round(t.frequency);
    if (std::fabs(t.frequency - r) > 1e-9)
      throw precondition_violation("periodic form requires integer frequencies");
    if (r == 0.0) {
      p.a0 = 2.0 * t.coeff_pos.real();
      continue;
    }
    const auto nu = static_cast<std::size_t>(r);
    if (p.coeffs.size() < nu) p.coeffs.resize(nu, {0.0, 0.0});
    p.coeffs[nu - 1] = {2.0 * t.coeff_pos.real(), -2.0 * t.coeff_pos.imag()};
  }
  return p;
}

}  // namespace apsum
