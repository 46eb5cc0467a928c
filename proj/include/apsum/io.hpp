#pragma once

#include <iosfwd>
#include <string>

#include "apsum/apfun.hpp"
#include "apsum/seqclass.hpp"
#include "apsum/verify.hpp"

namespace apsum {

// %.12g formatting used for every number in CSV output; byte-stable for
// identical inputs.
std::string format_g12(double v);

// Fixture file: '#' comments, one 'alpha <value>' line, and
// 'term <frequency> <re> <im>' lines. Negative frequencies define the
// amplitude on e^{-i |frequency| x}.
APFunction load_fixture(const std::string& path);
APFunction parse_fixture(std::istream& in, const std::string& origin);

// Matrix file: '#' comments, a 'matrix <kind>' header (custom,
// cesaro, riesz <exponent>); custom matrices then list 'row <n>' blocks of
// '<k> <weight>' pairs.
SummabilityMatrix load_matrix_file(const std::string& path);
SummabilityMatrix parse_matrix(std::istream& in, const std::string& origin);

// "cesaro", "riesz:<exponent>" or a file path.
SummabilityMatrix matrix_by_spec(const std::string& spec);

// Fixture by builtin name or file path.
APFunction fixture_by_spec(const std::string& spec);

void write_bound_report_csv(const BoundReport& report, std::ostream& out);
void write_bound_report_json(const BoundReport& report, std::ostream& out);
void write_class_report_csv(const ClassReport& report, std::ostream& out);
void write_class_report_json(const ClassReport& report, std::ostream& out);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace apsum
