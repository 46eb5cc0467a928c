#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "apsum/fixtures.hpp"
#include "apsum/summation.hpp"

using namespace apsum;

namespace {
constexpr double pi = std::numbers::pi;

MatrixRow cesaro_row(int n) { return SummabilityMatrix::cesaro().row(n); }

MatrixRow unit_mass(int n, int k0) {
  MatrixRow row{n, std::vector<double>(k0 + 1, 0.0)};
  row.weights[k0] = 1.0;
  return row;
}

// Brute-force oracle: evaluates every partial sum by direct term
// summation, no prefix tricks.
double strong_mean_oracle(const APFunction& f, const MatrixRow& row,
                          const GammaSequence& g, double q, double x) {
  double acc = 0.0;
  const cplx fx = f.evaluate(x);
  for (std::size_t k = 0; k < row.weights.size(); ++k) {
    if (row.weights[k] == 0.0) continue;
    cplx s{0.0, 0.0};
    for (const auto& t : f.terms()) {
      if (t.frequency > g(static_cast<int>(k))) continue;
      if (t.frequency == 0.0) {
        s += t.coeff_pos;
      } else {
        const cplx e{std::cos(t.frequency * x), std::sin(t.frequency * x)};
        s += t.coeff_pos * e + t.coeff_neg * std::conj(e);
      }
    }
    acc += row.weights[k] * std::pow(std::abs(s - fx), q);
  }
  return std::pow(acc, 1.0 / q);
}
}  // namespace

TEST_CASE("partial_sum keeps the inclusive spectral cut") {
  const APFunction f = fixture_by_name("sin3");
  CHECK(partial_sum(f, 5.0).size() == f.size());
  CHECK(partial_sum(f, 2.0).size() == 1);
  CHECK(partial_sum(f, 1.0).size() == 1);  // boundary inclusive
  CHECK(partial_sum(f, 0.5).empty());

  const APFunction c = make_trig(1.0, 2.0, {{1.0, 1.0, 0.0}});
  const APFunction s0 = partial_sum(c, 0.0);
  CHECK(s0.size() == 1);
  CHECK(s0.evaluate_real(1.23) == doctest::Approx(2.0));
}

TEST_CASE("partial_sum is idempotent and linear") {
  const APFunction f = fixture_by_name("dyadic");
  const APFunction g = fixture_by_name("sin3");
  for (double gamma : {0.0, 2.0, 4.5, 8.0}) {
    const APFunction once = partial_sum(f, gamma);
    const APFunction twice = partial_sum(once, gamma);
    CHECK(once.size() == twice.size());
    for (double x : {0.1, 1.7})
      CHECK(std::abs(once.evaluate(x) - twice.evaluate(x)) == 0.0);
  }
  const APFunction merged = APFunction::merge(f, g, 0.5);
  for (double gamma : {1.0, 3.0, 9.0})
    for (double x : {0.2, -1.1})
      CHECK(std::abs(partial_sum(merged, gamma).evaluate(x) -
                     (partial_sum(f, gamma).evaluate(x) +
                      partial_sum(g, gamma).evaluate(x))) < 1e-12);
}

TEST_CASE("partial_sum commutes with shifts") {
  const APFunction f = fixture_by_name("sqrt2");
  for (double h : {0.3, 2.1})
    for (double gamma : {1.0, 1.3})
      for (double x : {0.0, 0.9}) {
        const cplx a = partial_sum(f.shifted(h), gamma).evaluate(x);
        const cplx b = partial_sum(f, gamma).evaluate(x + h);
        CHECK(std::abs(a - b) < 1e-12);
      }
}

TEST_CASE("star_partial_sum reports the occupied interval") {
  const APFunction sine = fixture_by_name("sin");
  const auto s1 = star_partial_sum(sine, 1.0, 1);  // (0.5, 1) is empty
  CHECK_FALSE(s1.occupied.has_value());
  CHECK(s1.sum.empty());

  const APFunction slow = make_trig(1.0, 0.0, {{0.8, 0.0, 1.0}});
  const auto s2 = star_partial_sum(slow, 1.0, 1);  // 0.8 in (0.5, 1)
  REQUIRE(s2.occupied.has_value());
  CHECK(slow.terms()[*s2.occupied].frequency == doctest::Approx(0.8));

  const APFunction c = make_constant(3.0);
  const auto s3 = star_partial_sum(c, 2.0, 5);
  CHECK_FALSE(s3.occupied.has_value());
  CHECK(s3.sum.evaluate_real(0.4) == doctest::Approx(3.0));

  // two exponents inside the window contradict the declared gap
  const APFunction bad = make_trig(0.1, 0.0, {{0.6, 1.0, 0.0}, {0.8, 1.0, 0.0}});
  CHECK_THROWS_AS(star_partial_sum(bad, 1.0, 1), gap_violation);
}

TEST_CASE("kernel_psi: zeros, center value, star-kernel identity") {
  CHECK(kernel_psi(0.0, 2.0, pi) == doctest::Approx(0.0).epsilon(1e-12));
  // removable singularity: (eta + lambda) / (2 pi)
  CHECK(kernel_psi(1.0, 3.0, 0.0) == doctest::Approx(2.0 / pi));
  // small-t series oracle
  for (double t : {1e-4, 1e-6}) {
    CHECK(kernel_psi(1.0, 3.0, t) ==
          doctest::Approx(2.0 / pi).epsilon(1e-6));
  }
  CHECK_THROWS_AS(kernel_psi(2.0, 1.0, 0.3), invalid_parameter);
  CHECK_THROWS_AS(kernel_psi(-0.5, 1.0, 0.3), invalid_parameter);

  // Psi_{alpha k/2, alpha (k+1)/2}(t) = 4 sin(alpha t/4) sin(alpha(2k+1)t/4)
  //                                     / (pi alpha t^2)
  const double alpha = 1.5;
  for (int k : {0, 1, 4}) {
    for (int i = 1; i <= 40; ++i) {
      const double t = -6.0 + 12.0 * i / 40.0;
      if (t == 0.0) continue;
      const double lhs = kernel_psi(alpha * k / 2.0, alpha * (k + 1) / 2.0, t);
      const double rhs = 4.0 * std::sin(alpha * t / 4.0) *
                         std::sin(alpha * (2 * k + 1) * t / 4.0) /
                         (pi * alpha * t * t);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("kernel_psi is even in t") {
  for (double t : {0.3, 1.9, 14.2})
    CHECK(kernel_psi(0.7, 1.9, t) == doctest::Approx(kernel_psi(0.7, 1.9, -t)));
}

TEST_CASE("integral_partial_sum: kernel normalization on constants") {
  const APFunction one = make_constant(1.0);
  // relaxed tolerance keeps the truncation short for a unit test
  const QuadratureSpec quad = default_quadrature(1.0, 1e-4);
  const auto r = integral_partial_sum(one, 0.7, 0.5, 1.0, quad);
  CHECK(std::abs(r.value - cplx{1.0, 0.0}) < 5e-4);
  CHECK(r.tail_bound < 2e-4);
}

TEST_CASE("integral_partial_sum agrees with the direct partial sum") {
  const APFunction sine = fixture_by_name("sin");
  const QuadratureSpec quad = default_quadrature(1.0, 1e-4);
  // spectrum below the cutoff: S_2 sin = sin
  const auto kept = integral_partial_sum(sine, pi / 2.0, 2.0, 1.0, quad);
  CHECK(std::abs(kept.value - cplx{1.0, 0.0}) < 1e-3);
  // spectrum above the cutoff: S_0.2 sin = 0
  const QuadratureSpec quad_half = default_quadrature(0.5, 1e-4);
  const auto dropped =
      integral_partial_sum(sine, 0.4, 0.2, 0.5, quad_half);
  CHECK(std::abs(dropped.value) < 1e-3);
}

TEST_CASE("integral_partial_sum oracle equivalence on a 32-point grid") {
  const APFunction f = fixture_by_name("sin3");
  const QuadratureSpec quad = default_quadrature(1.0, 1e-4);
  for (double lambda : {2.0, 4.0}) {
    const APFunction direct = partial_sum(f, lambda);
    for (int i = 0; i < 32; ++i) {
      const double x = -pi + 2.0 * pi * i / 32.0;
      const auto r = integral_partial_sum(f, x, lambda, 1.0, quad);
      CHECK(std::abs(r.value - direct.evaluate(x)) <
            3.0 * (r.tail_bound + 1e-4) + 1e-6);
    }
  }
}

TEST_CASE("integral_partial_sum rejects occupied exclusion intervals") {
  const APFunction f = fixture_by_name("sin3");
  const QuadratureSpec quad = default_quadrature(1.0, 1e-3);
  CHECK_THROWS_AS(integral_partial_sum(f, 0.0, 0.5, 1.0, quad),
                  precondition_violation);
  const APFunction tight = fixture_by_name("sqrt2");  // gap ~0.41
  CHECK_THROWS_AS(integral_partial_sum(tight, 0.0, 2.0, 1.0, quad),
                  precondition_violation);
}

TEST_CASE("matrix_transform: constants, single rows, Cesaro oracle") {
  const GammaSequence unit = GammaSequence::custom(
      [](int k) { return static_cast<double>(k); }, "k");
  const APFunction c = make_constant(-1.5);
  for (int n : {0, 3, 17})
    CHECK(std::abs(matrix_transform(c, cesaro_row(n), unit, 0.9) -
                   cplx{-1.5, 0.0}) < 1e-13);

  const APFunction sine = fixture_by_name("sin");
  const GammaSequence gam = GammaSequence::half_gap(2.0);  // gamma_k = k
  // n = 0: single term picks S_{gamma_0} f
  CHECK(std::abs(matrix_transform(sine, cesaro_row(0), gam, 0.3)) < 1e-15);
  // (1/4)(S_0 + S_1 + S_2 + S_3) sin = (3/4) sin
  const double x = 0.77;
  CHECK(matrix_transform(sine, cesaro_row(3), gam, x).real() ==
        doctest::Approx(0.75 * std::sin(x)).epsilon(1e-13));

  MatrixRow bad{0, {0.5, 0.4}};
  CHECK_THROWS_AS(matrix_transform(sine, bad, gam, 0.0), row_sum_violation);
}

TEST_CASE("strong_mean: constants, complex harmonic, unit mass") {
  const GammaSequence unit = GammaSequence::custom(
      [](int k) { return static_cast<double>(k); }, "k");
  const APFunction c = make_constant(2.0);
  CHECK(strong_mean(c, cesaro_row(7), unit, 2.0, 1.1) == 0.0);

  // |S_k f - f| = 1 for k < 3 and 0 afterwards for f = e^{i3x}
  const APFunction e3 = fixture_by_name("exp3");
  for (int n : {0, 2, 5, 40})
    for (double q : {1.0, 2.0, 3.5}) {
      const double expected =
          std::pow(std::min(3.0, n + 1.0) / (n + 1.0), 1.0 / q);
      CHECK(strong_mean(e3, cesaro_row(n), unit, q, 0.37) ==
            doctest::Approx(expected).epsilon(1e-12));
    }

  const APFunction sine = fixture_by_name("sin");
  const double x = 1.9;
  CHECK(strong_mean(sine, unit_mass(5, 0), unit, 1.0, x) ==
        doctest::Approx(std::fabs(std::sin(x))).epsilon(1e-13));
  CHECK_THROWS_AS(strong_mean(sine, cesaro_row(2), unit, 0.0, x),
                  invalid_parameter);
  CHECK_THROWS_AS(strong_mean(sine, cesaro_row(2), unit, -1.0, x),
                  invalid_parameter);
}

TEST_CASE("strong_mean matches the brute-force oracle") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> ux(-pi, pi);
  const GammaSequence gam = GammaSequence::half_gap(1.0);
  for (const char* name : {"sin3", "dyadic", "exp3"}) {
    const APFunction f = fixture_by_name(name);
    for (int n : {0, 1, 4, 9})
      for (double q : {1.0, 2.0, 2.7}) {
        const MatrixRow row = cesaro_row(n);
        for (int rep = 0; rep < 4; ++rep) {
          const double x = ux(rng);
          CHECK(strong_mean(f, row, gam, q, x) ==
                doctest::Approx(strong_mean_oracle(f, row, gam, q, x))
                    .epsilon(1e-12));
        }
      }
  }
}

TEST_CASE("power-mean inequality in q") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  const GammaSequence gam = GammaSequence::half_gap(1.0);
  const APFunction f = fixture_by_name("sin4");
  for (int rep = 0; rep < 12; ++rep) {
    const double x = ux(rng);
    const MatrixRow row = cesaro_row(6);
    double prev = 0.0;
    bool first = true;
    for (double q : {0.5, 1.0, 2.0, 4.0}) {
      const double v = strong_mean(f, row, gam, q, x);
      if (!first) CHECK(v >= prev - 1e-12);
      prev = v;
      first = false;
    }
  }
}

TEST_CASE("strong_mean_norm: flat cutoffs give the plain norm") {
  // gamma_0 = 0 and gamma_1 = 1/2 both truncate sin completely, so the
  // strong mean reduces to |sin x| pointwise
  const APFunction sine = fixture_by_name("sin");
  const GammaSequence gam = GammaSequence::half_gap(1.0);
  const auto r = strong_mean_norm(sine, cesaro_row(1), gam, 2.0,
                                  NormSpace::stepanov(kInf));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));

  // support entirely above the spectral cutoff reproduces f exactly
  MatrixRow high{9, std::vector<double>(10, 0.0)};
  high.weights[8] = 0.5;
  high.weights[9] = 0.5;
  const auto zero = strong_mean_norm(sine, high, gam, 2.0,
                                     NormSpace::stepanov(2.0));
  CHECK(zero.value < 1e-9);

  const APFunction c = make_constant(5.0);
  CHECK(strong_mean_norm(c, cesaro_row(4), gam, 1.0,
                         NormSpace::stepanov(2.0))
            .value < 1e-12);
}

TEST_CASE("gamma sequences validate their range") {
  const GammaSequence g = GammaSequence::half_gap(2.0);
  CHECK(g(0) == 0.0);
  CHECK(g(5) == 5.0);
  CHECK_THROWS_AS(GammaSequence::half_gap(0.0), invalid_parameter);
  const GammaSequence bad = GammaSequence::custom(
      [](int k) { return k == 2 ? -1.0 : static_cast<double>(k); }, "bad");
  CHECK_THROWS_AS(bad(2), invalid_parameter);
  // decreasing rules are rejected when a row is evaluated
  const GammaSequence dec = GammaSequence::custom(
      [](int k) { return static_cast<double>(10 - k); }, "dec");
  const APFunction sine = fixture_by_name("sin");
  CHECK_THROWS_AS(strong_mean(sine, cesaro_row(3), dec, 1.0, 0.0),
                  invalid_parameter);
}
