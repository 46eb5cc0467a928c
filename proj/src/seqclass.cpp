#include "apsum/seqclass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace apsum {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kT1Tol = 1e-12;

// |a_k - a_{k+1}| for k = 0..K with a_{K+1} = 0, plus suffix sums
// suffix[m] = sum_{k>=m} |a_k - a_{k+1}| (suffix[K+1] = 0).
std::vector<double> variation_suffix(const MatrixRow& row) {
  const std::size_t K = row.weights.size();
  std::vector<double> suffix(K + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = K; i-- > 0;) {
    const double next = (i + 1 < K) ? row.weights[i + 1] : 0.0;
    acc += std::fabs(row.weights[i] - next);
    suffix[i] = acc;
  }
  return suffix;
}

double ratio_or_inf(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 0.0 ? kInfinity : 0.0;
}

}  // namespace

double MatrixRow::sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

SummabilityMatrix SummabilityMatrix::cesaro() {
  SummabilityMatrix m;
  m.kind_ = Kind::cesaro;
  m.name_ = "cesaro";
  return m;
}

SummabilityMatrix SummabilityMatrix::riesz(double exponent) {
  SummabilityMatrix m;
  m.kind_ = Kind::riesz;
  m.exponent_ = exponent;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "riesz:%g", exponent);
  m.name_ = buf;
  return m;
}

SummabilityMatrix SummabilityMatrix::custom(std::string name,
                                            std::vector<MatrixRow> rows) {
  for (const auto& r : rows)
    for (double w : r.weights)
      if (w < 0.0) throw invalid_parameter("matrix weights must be nonnegative");
  SummabilityMatrix m;
  m.kind_ = Kind::custom;
  m.name_ = std::move(name);
  m.rows_ = std::move(rows);
  return m;
}

MatrixRow SummabilityMatrix::row(int n) const {
  if (n < 0) throw invalid_parameter("row index must be nonnegative");
  switch (kind_) {
    case Kind::cesaro: {
      MatrixRow r{n, std::vector<double>(n + 1, 1.0 / (n + 1))};
      return r;
    }
    case Kind::riesz: {
      MatrixRow r{n, std::vector<double>(n + 1)};
      double total = 0.0;
      for (int k = 0; k <= n; ++k) {
        r.weights[k] = std::pow(k + 1.0, exponent_);
        total += r.weights[k];
      }
      for (double& w : r.weights) w /= total;
      return r;
    }
    case Kind::custom:
      for (const auto& r : rows_)
        if (r.n == n) return r;
      throw invalid_parameter("custom matrix has no row " + std::to_string(n));
  }
  throw invalid_parameter("unreachable matrix kind");
}

bool check_T1(const MatrixRow& row) {
  return std::fabs(row.sum() - 1.0) <= kT1Tol;
}

bool ms_check(const MatrixRow& row) {
  for (std::size_t k = 0; k < row.weights.size(); ++k)
    if (row.weight(k) < row.weight(k + 1)) return false;
  return true;
}

double rbvs_constant(const MatrixRow& row) {
  const auto suffix = variation_suffix(row);
  double best = 0.0;
  for (std::size_t m = 0; m < row.weights.size(); ++m)
    best = std::max(best, ratio_or_inf(suffix[m], std::fabs(row.weights[m])));
  return best;
}

double mrbvs_constant(const MatrixRow& row) {
  const auto suffix = variation_suffix(row);
  const std::size_t K = row.weights.size();
  double best = 0.0;
  for (std::size_t m = 1; m < K; ++m) {
    double window = 0.0;
    for (std::size_t k = (m + 1) / 2; k <= m; ++k)
      window += std::fabs(row.weight(k));
    best = std::max(best, ratio_or_inf(suffix[m], window / m));
  }
  return best;
}

double gm_constant(const MatrixRow& row) {
  const auto suffix = variation_suffix(row);
  const std::size_t K = row.weights.size();
  double best = 0.0;
  for (std::size_t m = 1; m < K; ++m) {
    const double block = suffix[m] - (2 * m <= K ? suffix[2 * m] : 0.0);
    best = std::max(best, ratio_or_inf(block, std::fabs(row.weights[m])));
  }
  return best;
}

double gm2beta_constant(const MatrixRow& row, double c) {
  if (!(c > 1.0)) throw invalid_parameter("c must exceed 1");
  const auto suffix = variation_suffix(row);
  const std::size_t K = row.weights.size();
  double best = 0.0;
  for (std::size_t m = 1; m < K; ++m) {
    const double block = suffix[m] - (2 * m <= K ? suffix[2 * m] : 0.0);
    const auto lo =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(m / c)));
    const auto hi = static_cast<std::size_t>(std::floor(c * m));
    double window = 0.0;
    for (std::size_t k = lo; k <= hi && k < K; ++k)
      window += row.weights[k] / static_cast<double>(k);
    best = std::max(best, ratio_or_inf(block, window));
  }
  return best;
}

ClassReport classify(const SummabilityMatrix& matrix, int n_min, int n_max,
                     double c) {
  if (n_min < 0 || n_max < n_min)
    throw invalid_parameter("bad n range for classify");
  ClassReport report;
  report.matrix_name = matrix.name();
  report.c = c;
  report.rows.reserve(n_max - n_min + 1);
  for (int n = n_min; n <= n_max; ++n) {
    const MatrixRow r = matrix.row(n);
    RowClassification rc;
    rc.n = n;
    rc.t1 = check_T1(r);
    rc.ms = ms_check(r);
    rc.rbvs = rbvs_constant(r);
    rc.mrbvs = mrbvs_constant(r);
    rc.gm = gm_constant(r);
    rc.gm2beta = gm2beta_constant(r, c);
    rc.a_n0 = r.weight(0);
    report.all_t1 &= rc.t1;
    report.all_ms &= rc.ms;
    report.sup_rbvs = std::max(report.sup_rbvs, rc.rbvs);
    report.sup_mrbvs = std::max(report.sup_mrbvs, rc.mrbvs);
    report.sup_gm = std::max(report.sup_gm, rc.gm);
    report.sup_gm2beta = std::max(report.sup_gm2beta, rc.gm2beta);
    report.rows.push_back(rc);
  }
  return report;
}

}  // namespace apsum
