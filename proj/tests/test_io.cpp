#include <doctest.h>

#include <cmath>
#include <sstream>

#include "apsum/fixtures.hpp"
#include "apsum/io.hpp"

using namespace apsum;

TEST_CASE("format_g12") {
  CHECK(format_g12(0.0) == "0");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_g12(-2.5) == "-2.5");
}

TEST_CASE("fixture files parse and evaluate") {
  std::istringstream in(
      "# two-tone fixture\n"
      "alpha 1\n"
      "term 0 0.25 0\n"
      "term 1 0 -0.5\n"
      "term -1 0 0.5\n"
      "term 3 0 -0.25   # sin 3x / 2\n"
      "term -3 0 0.25\n");
  const APFunction f = parse_fixture(in, "mem");
  CHECK(f.alpha() == 1.0);
  CHECK(f.real_valued());
  CHECK(f.size() == 3);
  for (double x : {0.0, 0.9, -2.4})
    CHECK(f.evaluate_real(x) ==
          doctest::Approx(0.25 + std::sin(x) + 0.5 * std::sin(3.0 * x))
              .epsilon(1e-13));
}

TEST_CASE("fixture schema errors") {
  std::istringstream no_alpha("term 1 1 0\n");
  CHECK_THROWS_AS(parse_fixture(no_alpha, "mem"), schema_error);
  std::istringstream bad_term("alpha 1\nterm 1 x 0\n");
  CHECK_THROWS_AS(parse_fixture(bad_term, "mem"), schema_error);
  std::istringstream bad_gap("alpha 2\nterm 1 1 0\nterm 2 1 0\n");
  CHECK_THROWS_AS(parse_fixture(bad_gap, "mem"), schema_error);
  CHECK_THROWS_AS(load_fixture("/nonexistent/fixture.txt"), io_error);
}

TEST_CASE("matrix files parse") {
  std::istringstream in(
      "matrix custom\n"
      "row 0\n"
      "0 1\n"
      "row 1\n"
      "0 0.5\n"
      "1 0.5\n");
  const SummabilityMatrix m = parse_matrix(in, "mem");
  CHECK(m.kind() == SummabilityMatrix::Kind::custom);
  CHECK(m.row(0).weights.size() == 1);
  CHECK(m.row(1).weights[1] == 0.5);
  CHECK_THROWS_AS(m.row(2), invalid_parameter);

  std::istringstream builtin("matrix riesz 1\n");
  CHECK(parse_matrix(builtin, "mem").name() == "riesz:1");

  std::istringstream negative("matrix custom\nrow 0\n0 -1\n");
  CHECK_THROWS_AS(parse_matrix(negative, "mem"), schema_error);
  std::istringstream loose("matrix custom\n0 1\n");
  CHECK_THROWS_AS(parse_matrix(loose, "mem"), schema_error);
  std::istringstream unknown("matrix fejer\n");
  CHECK_THROWS_AS(parse_matrix(unknown, "mem"), schema_error);
}

TEST_CASE("matrix_by_spec and fixture_by_spec") {
  CHECK(matrix_by_spec("cesaro").name() == "cesaro");
  CHECK(matrix_by_spec("riesz:2").name() == "riesz:2");
  CHECK_THROWS_AS(matrix_by_spec("riesz:x"), schema_error);
  CHECK_THROWS_AS(matrix_by_spec("/nonexistent/m.txt"), io_error);
  CHECK(fixture_by_spec("sin3").size() == 2);
  CHECK_THROWS_AS(fixture_by_spec("/nonexistent/f.txt"), io_error);
}

TEST_CASE("bound report CSV is byte-stable") {
  BoundReport report;
  report.statement = "thm4";
  report.rows = {{0, 1.0 / 3.0, 0.25, 4.0 / 3.0}, {1, 0.0, 0.5, 0.0}};
  std::ostringstream a, b;
  write_bound_report_csv(report, a);
  write_bound_report_csv(report, b);
  CHECK(a.str() == b.str());
  CHECK(a.str() ==
        "statement,n,lhs,rhs,ratio\n"
        "thm4,0,0.333333333333,0.25,1.33333333333\n"
        "thm4,1,0,0.5,0\n");
}

TEST_CASE("class report writers") {
  const ClassReport report =
      classify(SummabilityMatrix::cesaro(), 0, 3, 2.0);
  std::ostringstream csv;
  write_class_report_csv(report, csv);
  CHECK(csv.str().rfind("n,t1,ms,rbvs,mrbvs,gm,gm2beta,a_n0\n", 0) == 0);
  std::ostringstream js;
  write_class_report_json(report, js);
  CHECK(js.str().find("\"all_t1\": true") != std::string::npos);
}
