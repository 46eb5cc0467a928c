#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apsum/fixtures.hpp"
#include "apsum/io.hpp"
#include "apsum/norms.hpp"
#include "apsum/seqclass.hpp"
#include "apsum/summation.hpp"
#include "apsum/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::string fixture = "sin";
  std::string matrix = "cesaro";
  std::string statement;
  std::string majorant = "truncation";
  std::string variant = "E";
  std::string n_spec = "0..32";
  std::string p_spec = "inf";
  double q = 2.0;
  double c = 2.0;
  double tol = 1e-6;
  std::string out_dir = "out";
  std::string kind;
  int k = 0;
  double sigma = 1.0;
  double delta = 0.5;
  std::vector<std::string> inputs;
  std::string out_file;
};

double parse_p(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return apsum::kInf;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw apsum::invalid_parameter("cannot parse p from '" + s + "'");
  }
}

std::pair<int, int> parse_n_spec(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) return {0, std::stoi(s)};
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw apsum::invalid_parameter("cannot parse n range from '" + s + "'");
  }
}

std::string slug(const std::string& s) {
  std::string out;
  for (char ch : s)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' ||
            ch == '-')
               ? ch
               : '-';
  return out;
}

std::string p_slug(double p) {
  return std::isfinite(p) ? apsum::format_g12(p) : "inf";
}

std::string fixture_label(const std::string& spec) {
  const fs::path path(spec);
  return path.has_extension() || spec.find('/') != std::string::npos
             ? path.stem().string()
             : spec;
}

// Keys absent from the command line fall back to the config file.
void merge_config(const Options& defaults, Options& opt, CLI::App* cmd) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in)
    throw apsum::io_error("cannot open config '" + opt.config_path + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw apsum::schema_error("config parse error: " + std::string(e.what()));
  }
  auto take_string = [&](const char* flag, const char* key, std::string& dst) {
    auto* o = cmd->get_option_no_throw(flag);
    if ((!o || o->count() == 0) && cfg.contains(key))
      dst = cfg.at(key).get<std::string>();
  };
  auto take_double = [&](const char* flag, const char* key, double& dst) {
    auto* o = cmd->get_option_no_throw(flag);
    if ((!o || o->count() == 0) && cfg.contains(key))
      dst = cfg.at(key).get<double>();
  };
  (void)defaults;
  take_string("--fixture", "fixture", opt.fixture);
  take_string("--matrix", "matrix", opt.matrix);
  take_string("--statement", "statement", opt.statement);
  take_string("--majorant", "majorant", opt.majorant);
  take_string("--variant", "variant", opt.variant);
  take_string("--n", "n", opt.n_spec);
  take_string("--p", "p", opt.p_spec);
  take_string("--out", "out", opt.out_dir);
  take_string("--kind", "kind", opt.kind);
  take_double("--q", "q", opt.q);
  take_double("--c", "c", opt.c);
  take_double("--tol", "tol", opt.tol);
  take_double("--sigma", "sigma", opt.sigma);
  take_double("--delta", "delta", opt.delta);
  if (auto* o = cmd->get_option_no_throw("--k"); (!o || o->count() == 0) &&
                                                 cfg.contains("k"))
    opt.k = cfg.at("k").get<int>();
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw apsum::io_error("cannot create output directory '" + dir + "'");
}

int cmd_classify(const Options& opt) {
  if (!(opt.c > 1.0)) throw apsum::invalid_parameter("--c must exceed 1");
  const auto matrix = apsum::matrix_by_spec(opt.matrix);
  const auto [lo, hi] = parse_n_spec(opt.n_spec);
  const auto report = apsum::classify(matrix, lo, hi, opt.c);
  ensure_out_dir(opt.out_dir);
  const std::string base =
      opt.out_dir + "/classify_" + slug(matrix.name());
  {
    std::ostringstream csv;
    apsum::write_class_report_csv(report, csv);
    apsum::write_file(base + ".csv", csv.str());
  }
  {
    std::ostringstream js;
    apsum::write_class_report_json(report, js);
    apsum::write_file(base + ".json", js.str());
  }
  std::cout << "matrix " << matrix.name() << " rows " << lo << ".." << hi
            << ": T1=" << (report.all_t1 ? "all" : "VIOLATED")
            << " MS=" << (report.all_ms ? "all" : "no")
            << " sup_gm2beta=" << apsum::format_g12(report.sup_gm2beta)
            << "\nwrote " << base << ".csv\n";
  return report.all_t1 ? 0 : 3;
}

int cmd_strong_mean(const Options& opt) {
  const double p = parse_p(opt.p_spec);
  if (!(p > 1.0)) throw apsum::invalid_parameter("--p must exceed 1");
  if (!(opt.q > 0.0)) throw apsum::invalid_parameter("--q must be positive");
  const auto f = apsum::fixture_by_spec(opt.fixture);
  const auto matrix = apsum::matrix_by_spec(opt.matrix);
  const auto [lo, hi] = parse_n_spec(opt.n_spec);
  const auto gammas = apsum::GammaSequence::half_gap(f.alpha());
  const auto space = apsum::NormSpace::stepanov(p);
  std::ostringstream csv;
  csv << "n,value,tolerance\n";
  for (int n = lo; n <= hi; ++n) {
    const auto r =
        apsum::strong_mean_norm(f, matrix.row(n), gammas, opt.q, space);
    csv << n << ',' << apsum::format_g12(r.value) << ','
        << apsum::format_g12(r.tolerance) << '\n';
  }
  ensure_out_dir(opt.out_dir);
  const std::string path = opt.out_dir + "/strong_mean_" +
                           slug(fixture_label(opt.fixture)) + "_" +
                           slug(matrix.name()) + "_p" + p_slug(p) + "_q" +
                           apsum::format_g12(opt.q) + ".csv";
  apsum::write_file(path, csv.str());
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_approximate(const Options& opt) {
  const double p = parse_p(opt.p_spec);
  const auto f = apsum::fixture_by_spec(opt.fixture);
  apsum::NormResult result;
  if (opt.kind == "sup") {
    result = apsum::sup_norm_periodic(apsum::to_periodic(f));
  } else if (opt.kind == "stepanov") {
    result = apsum::stepanov_norm(f, p);
  } else if (opt.kind == "modulus") {
    result = apsum::modulus(f, opt.delta, apsum::NormSpace::stepanov(p));
  } else if (opt.kind == "modulus-uniform") {
    result = apsum::modulus(f, opt.delta, apsum::NormSpace::uniform());
  } else if (opt.kind == "best-periodic") {
    result = {apsum::best_approx_periodic(apsum::to_periodic(f), opt.k), 0.0};
  } else if (opt.kind == "best-stepanov") {
    result = {apsum::best_approx_stepanov_upper(f, opt.sigma, p), 0.0};
  } else if (opt.kind == "jackson") {
    result = {apsum::jackson_rhs(f, opt.sigma, p), 0.0};
  } else {
    throw apsum::invalid_parameter("unknown --kind '" + opt.kind + "'");
  }
  std::cout << "value " << apsum::format_g12(result.value) << "\ntolerance "
            << apsum::format_g12(result.tolerance) << "\n";
  if (!opt.out_file.empty())
    apsum::write_file(opt.out_file,
                      apsum::format_g12(result.value) + "\n");
  return 0;
}

int cmd_verify(const Options& opt) {
  const double p = parse_p(opt.p_spec);
  if (!(opt.q > 0.0)) throw apsum::invalid_parameter("--q must be positive");
  const auto [lo, hi] = parse_n_spec(opt.n_spec);
  const std::string& stmt = opt.statement;
  apsum::BoundReport report;
  if (stmt == "prop1" || stmt == "prop2") {
    const auto f = apsum::fixture_by_spec(opt.fixture);
    const auto grid = apsum::n_range(std::max(1, lo), hi);
    report = stmt == "prop1"
                 ? apsum::verify_prop1(f, p, opt.q, apsum::RRule::half(), grid)
                 : apsum::verify_prop2(f, p, opt.q, apsum::RRule::half(), grid,
                                       opt.majorant);
  } else if (stmt == "thm4" || stmt == "thm5" || stmt == "thm6") {
    const auto f = apsum::fixture_by_spec(opt.fixture);
    const auto matrix = apsum::matrix_by_spec(opt.matrix);
    const auto grid = apsum::n_range(lo, hi);
    if (stmt == "thm4")
      report = apsum::verify_thm4(f, p, opt.q, matrix, opt.c, grid);
    else if (stmt == "thm5")
      report = apsum::verify_thm5(f, p, opt.q, matrix, grid);
    else
      report = apsum::verify_thm6(f, p, opt.q, matrix, grid);
  } else if (stmt == "thm2") {
    const auto f = apsum::to_periodic(apsum::fixture_by_spec(opt.fixture));
    const auto matrix = apsum::matrix_by_spec(opt.matrix);
    report = apsum::verify_thm2_periodic(f, opt.q, matrix, opt.c,
                                         apsum::n_range(lo, hi), opt.variant);
  } else if (stmt == "remark7") {
    const auto f = apsum::fixture_by_spec(opt.fixture);
    report = apsum::compare_remark7(f, opt.q, apsum::n_range(lo, hi));
  } else {
    throw apsum::invalid_parameter("unknown --statement '" + stmt + "'");
  }
  report.fixture = fixture_label(opt.fixture);

  ensure_out_dir(opt.out_dir);
  std::string base = opt.out_dir + "/verify_" + stmt + "_" +
                     slug(report.fixture);
  if (!report.matrix.empty()) base += "_" + slug(report.matrix);
  if (stmt != "thm2" && stmt != "remark7") base += "_p" + p_slug(p);
  base += "_q" + apsum::format_g12(opt.q);
  if (!report.variant.empty()) base += "_" + report.variant;
  {
    std::ostringstream csv;
    apsum::write_bound_report_csv(report, csv);
    apsum::write_file(base + ".csv", csv.str());
  }
  {
    std::ostringstream js;
    apsum::write_bound_report_json(report, js);
    apsum::write_file(base + ".json", js.str());
  }
  std::cout << stmt << ": sup_ratio=" << apsum::format_g12(report.sup_ratio)
            << " consistent=" << (report.consistent ? "yes" : "NO")
            << "\nwrote " << base << ".csv\n";
  return report.consistent ? 0 : 4;
}

int cmd_report(const Options& opt) {
  if (opt.inputs.empty())
    throw apsum::invalid_parameter("report needs at least one --in file");
  if (opt.out_file.empty())
    throw apsum::invalid_parameter("report needs --out-file");
  std::string merged;
  std::string header;
  for (const auto& path : opt.inputs) {
    const std::string content = apsum::read_file(path);
    const auto nl = content.find('\n');
    if (nl == std::string::npos)
      throw apsum::schema_error("'" + path + "' has no header line");
    const std::string h = content.substr(0, nl);
    if (header.empty()) {
      header = h;
      merged = header + "\n";
    } else if (h != header) {
      throw apsum::schema_error("'" + path + "' header differs");
    }
    merged += content.substr(nl + 1);
  }
  apsum::write_file(opt.out_file, merged);
  std::cout << "wrote " << opt.out_file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong summability means of Fourier series: norms, "
               "sequence-class checks and bound verification"};
  app.require_subcommand(1);

  Options opt;
  const Options defaults = opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON config file");
    cmd->add_option("--out", opt.out_dir, "output directory");
    return cmd;
  };

  auto* classify = add_common(app.add_subcommand("classify",
      "classify matrix rows into the sequence classes"));
  classify->add_option("--matrix", opt.matrix, "cesaro, riesz:<e> or file");
  classify->add_option("--n", opt.n_spec, "row range A..B");
  classify->add_option("--c", opt.c, "window parameter c > 1");

  auto* strong = add_common(app.add_subcommand("strong-mean",
      "norms of the strong means over a row range"));
  strong->add_option("--fixture", opt.fixture, "builtin name or file");
  strong->add_option("--matrix", opt.matrix, "cesaro, riesz:<e> or file");
  strong->add_option("--n", opt.n_spec, "row range A..B");
  strong->add_option("--p", opt.p_spec, "Stepanov exponent or inf");
  strong->add_option("--q", opt.q, "strong-mean exponent q > 0");

  auto* approx = add_common(app.add_subcommand("approximate",
      "norm / best-approximation / modulus queries"));
  approx->add_option("--fixture", opt.fixture, "builtin name or file");
  approx->add_option("--kind", opt.kind,
                     "sup|stepanov|modulus|modulus-uniform|best-periodic|"
                     "best-stepanov|jackson")
      ->required();
  approx->add_option("--p", opt.p_spec, "Stepanov exponent or inf");
  approx->add_option("--k", opt.k, "polynomial degree");
  approx->add_option("--sigma", opt.sigma, "exponential type");
  approx->add_option("--delta", opt.delta, "modulus step");
  approx->add_option("--out-file", opt.out_file, "optional value file");

  auto* verify = add_common(app.add_subcommand("verify",
      "lhs/rhs ratio report for one statement"));
  verify->add_option("--statement", opt.statement,
                     "prop1|prop2|thm2|thm4|thm5|thm6|remark7")
      ->required();
  verify->add_option("--fixture", opt.fixture, "builtin name or file");
  verify->add_option("--matrix", opt.matrix, "cesaro, riesz:<e> or file");
  verify->add_option("--n", opt.n_spec, "row range A..B");
  verify->add_option("--p", opt.p_spec, "Stepanov exponent or inf");
  verify->add_option("--q", opt.q, "strong-mean exponent q > 0");
  verify->add_option("--c", opt.c, "window parameter c > 1");
  verify->add_option("--majorant", opt.majorant, "truncation|jackson");
  verify->add_option("--variant", opt.variant, "thm2 variant: E|omega|MS");
  verify->add_option("--tol", opt.tol, "quadrature tolerance override");

  auto* report = app.add_subcommand("report", "merge verification CSVs");
  report->add_option("--in", opt.inputs, "input CSV files")->required();
  report->add_option("--out-file", opt.out_file, "merged CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = app.get_subcommands().front();
    merge_config(defaults, opt, active);
    if (active == classify) return cmd_classify(opt);
    if (active == strong) return cmd_strong_mean(opt);
    if (active == approx) return cmd_approximate(opt);
    if (active == verify) return cmd_verify(opt);
    if (active == report) return cmd_report(opt);
    std::cerr << "no command\n";
    return 1;
  } catch (const apsum::hypothesis_violation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const apsum::invalid_parameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 1;
  } catch (const apsum::schema_error& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const apsum::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const apsum::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
