#include "apsum/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "apsum/fixtures.hpp"

namespace apsum {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

// JSON has no literal for infinities; encode them as strings.
ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

APFunction parse_fixture(std::istream& in, const std::string& origin) {
  double alpha = 0.0;
  bool have_alpha = false;
  // frequency magnitude -> (coeff_pos, coeff_neg)
  std::map<double, std::pair<cplx, cplx>> spectrum;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string head;
    if (!(ls >> head)) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (head == "alpha") {
      if (!(ls >> alpha)) throw schema_error(where + ": bad alpha line");
      have_alpha = true;
    } else if (head == "term") {
      double freq, re, im;
      if (!(ls >> freq >> re >> im))
        throw schema_error(where + ": term needs <frequency> <re> <im>");
      auto& entry = spectrum[std::fabs(freq)];
      if (freq >= 0.0)
        entry.first += cplx{re, im};
      else
        entry.second += cplx{re, im};
    } else {
      throw schema_error(where + ": unknown directive '" + head + "'");
    }
  }
  if (!have_alpha) throw schema_error(origin + ": missing alpha line");
  std::vector<SpectralTerm> terms;
  terms.reserve(spectrum.size());
  for (const auto& [freq, coeffs] : spectrum)
    terms.push_back({freq, coeffs.first, coeffs.second});
  try {
    return APFunction(std::move(terms), alpha);
  } catch (const error& e) {
    throw schema_error(origin + ": " + e.what());
  }
}

APFunction load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open fixture file '" + path + "'");
  return parse_fixture(in, path);
}

SummabilityMatrix parse_matrix(std::istream& in, const std::string& origin) {
  std::string line;
  int lineno = 0;
  std::string kind;
  double riesz_exp = 1.0;
  std::vector<MatrixRow> rows;
  MatrixRow* current = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string head;
    if (!(ls >> head)) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (head == "matrix") {
      if (!(ls >> kind)) throw schema_error(where + ": missing matrix kind");
      if (kind == "riesz" && !(ls >> riesz_exp))
        throw schema_error(where + ": riesz needs an exponent");
      if (kind != "custom" && kind != "cesaro" && kind != "riesz")
        throw schema_error(where + ": unknown matrix kind '" + kind + "'");
    } else if (head == "row") {
      if (kind != "custom")
        throw schema_error(where + ": row blocks need 'matrix custom'");
      int n;
      if (!(ls >> n) || n < 0) throw schema_error(where + ": bad row index");
      rows.push_back({n, {}});
      current = &rows.back();
    } else {
      if (!current) throw schema_error(where + ": weight line outside a row");
      int k;
      double w;
      std::istringstream pair(strip_comment(line));
      if (!(pair >> k >> w) || k < 0)
        throw schema_error(where + ": weight line needs '<k> <weight>'");
      if (w < 0.0) throw schema_error(where + ": negative weight");
      auto& weights = current->weights;
      if (weights.size() <= static_cast<std::size_t>(k))
        weights.resize(k + 1, 0.0);
      weights[k] += w;
    }
  }
  if (kind.empty()) throw schema_error(origin + ": missing 'matrix' header");
  if (kind == "cesaro") return SummabilityMatrix::cesaro();
  if (kind == "riesz") return SummabilityMatrix::riesz(riesz_exp);
  if (rows.empty()) throw schema_error(origin + ": custom matrix has no rows");
  try {
    return SummabilityMatrix::custom(origin, std::move(rows));
  } catch (const error& e) {
    throw schema_error(origin + ": " + e.what());
  }
}

SummabilityMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open matrix file '" + path + "'");
  return parse_matrix(in, path);
}

SummabilityMatrix matrix_by_spec(const std::string& spec) {
  if (spec == "cesaro") return SummabilityMatrix::cesaro();
  if (spec.rfind("riesz:", 0) == 0) {
    try {
      return SummabilityMatrix::riesz(std::stod(spec.substr(6)));
    } catch (const std::exception&) {
      throw schema_error("bad riesz exponent in '" + spec + "'");
    }
  }
  return load_matrix_file(spec);
}

APFunction fixture_by_spec(const std::string& spec) {
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), spec) != names.end())
    return fixture_by_name(spec);
  return load_fixture(spec);
}

void write_bound_report_csv(const BoundReport& report, std::ostream& out) {
  out << "statement,n,lhs,rhs,ratio\n";
  for (const auto& row : report.rows)
    out << report.statement << ',' << row.n << ',' << format_g12(row.lhs)
        << ',' << format_g12(row.rhs) << ',' << format_g12(row.ratio) << '\n';
}

void write_bound_report_json(const BoundReport& report, std::ostream& out) {
  ordered_json j;
  j["statement"] = report.statement;
  j["fixture"] = report.fixture;
  j["matrix"] = report.matrix;
  j["p"] = json_number(report.p);
  j["q"] = report.q;
  j["c"] = report.c;
  j["majorant"] = report.majorant;
  j["variant"] = report.variant;
  j["sup_ratio"] = json_number(report.sup_ratio);
  j["consistent"] = report.consistent;
  j["rhs_zero_tol"] = report.rhs_zero_tol;
  j["lhs_zero_tol"] = report.lhs_zero_tol;
  j["notes"] = report.notes;
  auto rows = ordered_json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"n", row.n},
                    {"lhs", json_number(row.lhs)},
                    {"rhs", json_number(row.rhs)},
                    {"ratio", json_number(row.ratio)}});
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

void write_class_report_csv(const ClassReport& report, std::ostream& out) {
  out << "n,t1,ms,rbvs,mrbvs,gm,gm2beta,a_n0\n";
  for (const auto& row : report.rows)
    out << row.n << ',' << (row.t1 ? 1 : 0) << ',' << (row.ms ? 1 : 0) << ','
        << format_g12(row.rbvs) << ',' << format_g12(row.mrbvs) << ','
        << format_g12(row.gm) << ',' << format_g12(row.gm2beta) << ','
        << format_g12(row.a_n0) << '\n';
}

void write_class_report_json(const ClassReport& report, std::ostream& out) {
  ordered_json j;
  j["matrix"] = report.matrix_name;
  j["c"] = report.c;
  j["all_t1"] = report.all_t1;
  j["all_ms"] = report.all_ms;
  j["sup_rbvs"] = json_number(report.sup_rbvs);
  j["sup_mrbvs"] = json_number(report.sup_mrbvs);
  j["sup_gm"] = json_number(report.sup_gm);
  j["sup_gm2beta"] = json_number(report.sup_gm2beta);
  j["n_min"] = report.rows.empty() ? 0 : report.rows.front().n;
  j["n_max"] = report.rows.empty() ? 0 : report.rows.back().n;
  out << j.dump(2) << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace apsum
