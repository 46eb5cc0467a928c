#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "apsum/apfun.hpp"
#include "apsum/fixtures.hpp"

using namespace apsum;

namespace {
constexpr double pi = std::numbers::pi;

APFunction complex_exp(double freq) {
  return APFunction({{freq, cplx{1.0, 0.0}, cplx{0.0, 0.0}}}, 1.0);
}
}  // namespace

TEST_CASE("evaluate: constants and exact sine points") {
  const APFunction one = make_constant(1.0);
  CHECK(one.evaluate(3.7) == cplx{1.0, 0.0});
  CHECK(one.evaluate_real(-12.0) == 1.0);

  const APFunction sine = fixture_by_name("sin");
  CHECK(sine.evaluate_real(pi / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(sine.evaluate(pi / 2) - cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("evaluate: incommensurate pair against direct summation") {
  const APFunction f = fixture_by_name("sqrt2");
  // independent oracle: term-by-term trigonometric summation
  for (double x : {1.0, 0.3, -2.2, 17.0}) {
    const double expected = std::sin(x) + std::sin(std::sqrt(2.0) * x);
    CHECK(f.evaluate_real(x) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(f.evaluate(x) - cplx{expected, 0.0}) < 1e-13);
  }
}

TEST_CASE("evaluate is linear under term-wise merge") {
  const APFunction f = fixture_by_name("sin3");
  const APFunction g = fixture_by_name("dyadic");
  const APFunction sum = APFunction::merge(f, g, 0.5);
  for (double x : {0.0, 0.7, 2.9, -4.1}) {
    CHECK(std::abs(sum.evaluate(x) - (f.evaluate(x) + g.evaluate(x))) <
          1e-12);
  }
  // merging f with its negation cancels every term
  const APFunction zero = APFunction::merge(f, f.scaled(-1.0), 1.0);
  CHECK(zero.empty());
}

TEST_CASE("construction enforces the invariants") {
  CHECK_THROWS_AS(make_trig(2.0, 0.0, {{1.0, 1.0, 0.0}, {2.0, 1.0, 0.0}}),
                  gap_violation);
  CHECK_THROWS_AS(APFunction({{1.0, cplx{0.0, 0.0}, cplx{0.0, 0.0}}}, 1.0),
                  invalid_parameter);
  CHECK_THROWS_AS(APFunction({{0.0, cplx{0.0, 1.0}, cplx{0.0, 0.0}}}, 1.0),
                  invalid_parameter);
  CHECK_THROWS_AS(make_trig(-1.0, 0.0, {{1.0, 1.0, 0.0}}), invalid_parameter);
  // the gap between lambda_0 = 0 and lambda_1 is not constrained
  CHECK_NOTHROW(make_trig(2.0, 1.0, {{0.5, 1.0, 0.0}}));
  CHECK_THROWS_AS(fixture_by_name("exp3").evaluate_real(0.0),
                  precondition_violation);
}

TEST_CASE("phi: constant, trig identity, and t = 0") {
  const APFunction c = make_constant(2.5);
  CHECK(std::abs(phi(c, 0.3, 1.7)) == 0.0);

  const APFunction cosine = make_trig(1.0, 0.0, {{1.0, 1.0, 0.0}});
  for (double t : {0.1, 0.9, 2.0}) {
    const cplx v = phi(cosine, 0.0, t);
    CHECK(v.real() == doctest::Approx(2.0 * std::cos(t) - 2.0).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
  const APFunction f = fixture_by_name("sin3");
  CHECK(std::abs(phi(f, 1.1, 0.0)) < 1e-15);
}

TEST_CASE("phi is even in t") {
  const APFunction f = fixture_by_name("dyadic");
  for (double x : {0.0, 0.4, -1.3})
    for (double t : {0.2, 1.1, 3.7})
      CHECK(std::abs(phi(f, x, t) - phi(f, x, -t)) < 1e-13);
}

TEST_CASE("verify_gap checks consecutive positive-exponent gaps") {
  const APFunction a = make_trig(1.0, 1.0, {{1.0, 1.0, 0.0}, {3.0, 1.0, 0.0}});
  CHECK(verify_gap(a, 2.0));
  const APFunction b =
      make_trig(0.4, 1.0, {{1.0, 1.0, 0.0}, {1.5, 1.0, 0.0}});
  CHECK_FALSE(verify_gap(b, 1.0));
  const APFunction c = make_trig(2.0, 1.0, {{2.0, 1.0, 0.0}});
  CHECK(verify_gap(c, 2.0));
}

TEST_CASE("mean_coefficient: constants and closed-form oscillations") {
  const APFunction one = make_constant(1.0);
  CHECK(std::abs(mean_coefficient(one, 0.0, 37.0) - cplx{1.0, 0.0}) < 1e-9);

  const APFunction e2 = complex_exp(2.0);
  const double L = 1000.0;
  // on the spectrum: integrand is exactly 1
  CHECK(std::abs(mean_coefficient(e2, 2.0, L) - cplx{1.0, 0.0}) < 1e-8);
  // off the spectrum: (1/L) int e^{-i t} dt = (e^{-iL} - 1) / (-i L)
  const cplx mu{0.0, -1.0};
  const cplx expected = (std::exp(mu * L) - cplx{1.0, 0.0}) / (mu * L);
  const cplx got = mean_coefficient(e2, 3.0, L);
  CHECK(std::abs(got - expected) < 1e-8);
  CHECK(std::abs(got) < 2.0 / L + 1e-8);
}

TEST_CASE("mean_coefficient error halves when L doubles") {
  // |off-spectrum mean| = |e^{-iL} - 1| / L; with L a multiple of 2pi/3
  // the numerator keeps magnitude sqrt(3) under doubling, so the error
  // scales exactly like 1/L.
  const APFunction e2 = complex_exp(2.0);
  const double L0 = 200.0 * pi + 2.0 * pi / 3.0;
  double prev = std::abs(mean_coefficient(e2, 3.0, L0));
  for (double L = 2.0 * L0; L <= 4.0 * L0; L *= 2.0) {
    const double cur = std::abs(mean_coefficient(e2, 3.0, L));
    CHECK(cur / prev == doctest::Approx(0.5).epsilon(0.02));
    prev = cur;
  }
}

TEST_CASE("mean_coefficient recovers coefficients with O(1/L) error") {
  const APFunction f = fixture_by_name("sin3");  // A_1 = -i/2, A_3 = -i/4
  const double L = 500.0;
  const cplx a1 = mean_coefficient(f, 1.0, L);
  CHECK(std::abs(a1 - cplx{0.0, -0.5}) < 3.0 / L);
  const cplx a3 = mean_coefficient(f, 3.0, L);
  CHECK(std::abs(a3 - cplx{0.0, -0.25}) < 3.0 / L);
}

TEST_CASE("periodic evaluation matches the spectral form on a dense grid") {
  PeriodicFunction p;
  p.a0 = 0.8;
  p.coeffs = {{1.0, -0.5}, {0.0, 0.0}, {0.25, 0.125}};
  const APFunction ap = p.to_ap();
  CHECK(ap.alpha() == 1.0);
  for (int i = 0; i <= 1000; ++i) {
    const double x = -pi + 2.0 * pi * i / 1000.0;
    CHECK(std::abs(ap.evaluate(x) - cplx{p.evaluate(x), 0.0}) < 1e-12);
    CHECK(ap.evaluate_real(x) == doctest::Approx(p.evaluate(x)).epsilon(1e-12));
  }
  const PeriodicFunction back = to_periodic(ap);
  CHECK(back.a0 == doctest::Approx(p.a0));
  REQUIRE(back.coeffs.size() == p.coeffs.size());
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    CHECK(back.coeffs[i].first == doctest::Approx(p.coeffs[i].first));
    CHECK(back.coeffs[i].second == doctest::Approx(p.coeffs[i].second));
  }
}

TEST_CASE("shift and truncation mechanics") {
  const APFunction f = fixture_by_name("sin3");
  const APFunction shifted = f.shifted(0.7);
  CHECK(shifted.real_valued());
  for (double x : {0.0, 1.2})
    CHECK(shifted.evaluate_real(x) ==
          doctest::Approx(f.evaluate_real(x + 0.7)).epsilon(1e-13));

  CHECK(f.truncated(2.0).size() == 1);
  CHECK(f.truncated(3.0).size() == 2);  // boundary inclusive
  CHECK(f.tail_above(1.0).size() == 1);
  CHECK(f.tail_above(3.0).empty());

  const APFunction diff = f.shift_difference(0.4);
  for (double x : {0.3, -2.0})
    CHECK(diff.evaluate_real(x) ==
          doctest::Approx(f.evaluate_real(x + 0.4) - f.evaluate_real(x))
              .epsilon(1e-12));
  // a full-period shift of an integer spectrum cancels exactly
  CHECK(f.shift_difference(2.0 * pi).coeff_abs_sum() < 1e-14);
}
