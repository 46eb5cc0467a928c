#include "apsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "apsum/detail/parallel.hpp"

namespace apsum {

namespace {

constexpr double kPi = std::numbers::pi;

void check_pq(double p, double q, bool need_p_ge_q) {
  if (!(p > 1.0)) throw invalid_parameter("p must exceed 1");
  if (!(q > 0.0)) throw invalid_parameter("q must be positive");
  if (need_p_ge_q && p < q)
    throw hypothesis_violation("statement requires p >= q");
}

bool a_n0_decays(const std::vector<double>& a0) {
  if (a0.size() < 4) return true;
  const std::size_t half = a0.size() / 2;
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < a0.size(); ++i)
    (i < half ? first : last) = std::max(i < half ? first : last, a0[i]);
  return last <= 0.75 * first + 1e-15 || last <= 1e-12;
}

enum class ClassCheck { gm2beta, ms };

// T1 + class membership + a_{n,0} decay over the tested rows.
void check_matrix_hypotheses(const SummabilityMatrix& A,
                             const std::vector<int>& n_grid, ClassCheck mode,
                             double c) {
  std::vector<double> a0;
  a0.reserve(n_grid.size());
  for (int n : n_grid) {
    const MatrixRow row = A.row(n);
    if (!check_T1(row))
      throw hypothesis_violation("matrix row " + std::to_string(n) +
                                 " violates the row-sum condition");
    if (mode == ClassCheck::ms) {
      if (!ms_check(row))
        throw hypothesis_violation("matrix row " + std::to_string(n) +
                                   " is not nonincreasing");
    } else {
      if (!std::isfinite(gm2beta_constant(row, c)))
        throw hypothesis_violation("matrix row " + std::to_string(n) +
                                   " fails the block-variation condition");
    }
    a0.push_back(row.weight(0));
  }
  if (!a_n0_decays(a0))
    throw hypothesis_violation("a_{n,0} does not decay over the tested rows");
}

int max_support(const SummabilityMatrix& A, const std::vector<int>& n_grid) {
  int k_max = 0;
  for (int n : n_grid)
    k_max = std::max(k_max,
                     static_cast<int>(A.row(n).weights.size()) - 1);
  return k_max;
}

double q_mean(const MatrixRow& row, double q,
              const std::function<double(int)>& value) {
  double acc = 0.0;
  for (std::size_t k = 0; k < row.weights.size(); ++k) {
    if (row.weights[k] == 0.0) continue;
    const double v = value(static_cast<int>(k));
    acc += row.weights[k] * (q == 2.0 ? v * v : std::pow(v, q));
  }
  return q == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / q);
}

// Fills cache->values for every n in the grid; norms computed in parallel.
void warm_lhs(const std::function<MatrixRow(int)>& row_of,
              const APFunction& f, const GammaSequence& gammas, double q,
              const NormSpace& space, const std::vector<int>& n_grid,
              LhsCache& cache) {
  std::vector<int> missing;
  for (int n : n_grid)
    if (!cache.values.count(n)) missing.push_back(n);
  std::vector<double> vals(missing.size());
  const double span = default_u_span(f);
  NormSpace tuned = space;
  if (tuned.osc_hint == 0.0) tuned.osc_hint = f.max_frequency();
  detail::parallel_for(static_cast<int>(missing.size()), [&](int i) {
    const MatrixRow row = row_of(missing[i]);
    const RowEvaluator eval(f, row, gammas, q);
    vals[i] = function_norm([&eval](double x) { return eval.strong_mean(x); },
                            tuned, span)
                  .value;
  });
  for (std::size_t i = 0; i < missing.size(); ++i)
    cache.values[missing[i]] = vals[i];
}

BoundReport finalize(BoundReport report) {
  report.sup_ratio = 0.0;
  report.consistent = true;
  for (auto& row : report.rows) {
    if (row.rhs > report.rhs_zero_tol) {
      row.ratio = row.lhs / row.rhs;
      report.sup_ratio = std::max(report.sup_ratio, row.ratio);
    } else {
      row.ratio = 0.0;
      if (row.lhs > report.lhs_zero_tol) report.consistent = false;
    }
  }
  return report;
}

MatrixRow proposition_row(int n, int r) {
  MatrixRow row{n, std::vector<double>(n, 0.0)};
  for (int k = n - r; k <= n - 1; ++k)
    row.weights[k] = 1.0 / static_cast<double>(r);
  return row;
}

int checked_r(const RRule& rule, int n) {
  const int r = rule.fn(n);
  if (r < 1 || r > n)
    throw invalid_parameter("r_rule must satisfy 1 <= r_n <= n at n = " +
                            std::to_string(n));
  return r;
}

// Shared core of the propositions: lhs is the S^p norm of the delayed
// strong mean over k in [n - r_n, n - 1] with cutoffs alpha k / 2.
void proposition_lhs(const APFunction& f, double p, double q,
                     const RRule& rule, const std::vector<int>& n_grid,
                     LhsCache& lhs) {
  const GammaSequence gammas = GammaSequence::half_gap(f.alpha());
  const NormSpace space = NormSpace::stepanov(p);
  warm_lhs([&](int n) { return proposition_row(n, checked_r(rule, n)); }, f,
           gammas, q, space, n_grid, lhs);
}

enum class RhsKind { trunc, omega };

BoundReport matrix_statement(const std::string& id, const APFunction& f,
                             double p, double q, const SummabilityMatrix& A,
                             double class_c, ClassCheck check, RhsKind kind,
                             const std::function<double(int)>& rhs_arg,
                             const std::vector<int>& n_grid,
                             ApproxCache* cache, LhsCache* lhs,
                             std::vector<std::string> notes) {
  check_pq(p, q, /*need_p_ge_q=*/true);
  for (int n : n_grid)
    if (n < 0) throw invalid_parameter("n grid must be nonnegative");
  check_matrix_hypotheses(A, n_grid, check, class_c);

  ApproxCache local_cache(f, p);
  ApproxCache& ac = cache ? *cache : local_cache;

  const int k_max = max_support(A, n_grid);
  std::vector<double> args;
  args.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) args.push_back(rhs_arg(k));
  if (kind == RhsKind::trunc)
    ac.warm_trunc(args);
  else
    ac.warm_omega(args);

  LhsCache local_lhs;
  LhsCache& lc = lhs ? *lhs : local_lhs;
  const GammaSequence gammas = GammaSequence::half_gap(f.alpha());
  warm_lhs([&](int n) { return A.row(n); }, f, gammas, q,
           NormSpace::stepanov(p), n_grid, lc);

  BoundReport report;
  report.statement = id;
  report.matrix = A.name();
  report.p = p;
  report.q = q;
  report.c = class_c;
  report.majorant = kind == RhsKind::trunc ? "truncation" : "";
  report.rhs_zero_tol = 1e-12 * std::max(1.0, ac.norm_f());
  report.notes = std::move(notes);
  for (int n : n_grid) {
    const MatrixRow row = A.row(n);
    const double rhs = q_mean(row, q, [&](int k) {
      return kind == RhsKind::trunc ? ac.trunc_upper(rhs_arg(k))
                                    : ac.omega(rhs_arg(k));
    });
    report.rows.push_back({n, lc.values.at(n), rhs, 0.0});
  }
  return finalize(std::move(report));
}

}  // namespace

RRule RRule::half() {
  return {[](int n) { return (n + 1) / 2; }, "ceil(n/2)"};
}

double BoundReport::sup_ratio_through(int n_max) const {
  double s = 0.0;
  for (const auto& row : rows)
    if (row.n <= n_max) s = std::max(s, row.ratio);
  return s;
}

std::vector<int> n_range(int lo, int hi) {
  if (lo < 0 || hi < lo) throw invalid_parameter("bad n range");
  std::vector<int> out;
  out.reserve(hi - lo + 1);
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

ApproxCache::ApproxCache(APFunction f, double p)
    : f_(std::move(f)), p_(p), space_(NormSpace::stepanov(p)) {
  space_.window_count = 32;
  space_.max_window_count = 1024;
}

double ApproxCache::norm_f() {
  if (norm_f_ < 0.0) norm_f_ = stepanov_norm(f_, p_).value;
  return norm_f_;
}

double ApproxCache::trunc_upper(double sigma) {
  const std::size_t cut = f_.cut_index(sigma);
  auto it = trunc_by_cut_.find(cut);
  if (it != trunc_by_cut_.end()) return it->second;
  const double v = best_approx_stepanov_upper(f_, sigma, p_);
  trunc_by_cut_.emplace(cut, v);
  return v;
}

double ApproxCache::omega(double delta) {
  auto it = omega_.find(delta);
  if (it != omega_.end()) return it->second;
  const double v = modulus(f_, delta, space_).value;
  omega_.emplace(delta, v);
  return v;
}

void ApproxCache::warm_trunc(const std::vector<double>& sigmas) {
  std::vector<double> missing;
  std::set<std::size_t> seen;
  for (double s : sigmas) {
    const std::size_t cut = f_.cut_index(s);
    if (!trunc_by_cut_.count(cut) && seen.insert(cut).second)
      missing.push_back(s);
  }
  std::vector<double> vals(missing.size());
  detail::parallel_for(static_cast<int>(missing.size()), [&](int i) {
    vals[i] = best_approx_stepanov_upper(f_, missing[i], p_);
  });
  for (std::size_t i = 0; i < missing.size(); ++i)
    trunc_by_cut_.emplace(f_.cut_index(missing[i]), vals[i]);
}

void ApproxCache::warm_omega(const std::vector<double>& deltas) {
  std::vector<double> missing;
  std::set<double> seen;
  for (double d : deltas)
    if (!omega_.count(d) && seen.insert(d).second) missing.push_back(d);
  std::vector<double> vals(missing.size());
  detail::parallel_for(static_cast<int>(missing.size()), [&](int i) {
    vals[i] = modulus(f_, missing[i], space_).value;
  });
  for (std::size_t i = 0; i < missing.size(); ++i)
    omega_.emplace(missing[i], vals[i]);
}

PeriodicApproxCache::PeriodicApproxCache(PeriodicFunction f)
    : f_(std::move(f)), ap_(f_.to_ap()) {}

double PeriodicApproxCache::norm_f() {
  if (norm_f_ < 0.0) norm_f_ = sup_norm_periodic(f_).value;
  return norm_f_;
}

double PeriodicApproxCache::best(int k) {
  const int key = std::min(k, f_.degree());  // E_k = 0 beyond the degree
  auto it = best_.find(key);
  if (it != best_.end()) return it->second;
  const double v = best_approx_periodic(f_, key);
  best_.emplace(key, v);
  return v;
}

double PeriodicApproxCache::omega(double delta) {
  auto it = omega_.find(delta);
  if (it != omega_.end()) return it->second;
  const double v = modulus(ap_, delta, NormSpace::uniform()).value;
  omega_.emplace(delta, v);
  return v;
}

void PeriodicApproxCache::warm_best(int k_max) {
  std::vector<int> missing;
  for (int k = 0; k <= std::min(k_max, f_.degree()); ++k)
    if (!best_.count(k)) missing.push_back(k);
  std::vector<double> vals(missing.size());
  detail::parallel_for(static_cast<int>(missing.size()), [&](int i) {
    vals[i] = best_approx_periodic(f_, missing[i]);
  });
  for (std::size_t i = 0; i < missing.size(); ++i)
    best_.emplace(missing[i], vals[i]);
}

void PeriodicApproxCache::warm_omega(const std::vector<double>& deltas) {
  std::vector<double> missing;
  std::set<double> seen;
  for (double d : deltas)
    if (!omega_.count(d) && seen.insert(d).second) missing.push_back(d);
  std::vector<double> vals(missing.size());
  detail::parallel_for(static_cast<int>(missing.size()), [&](int i) {
    vals[i] = modulus(ap_, missing[i], NormSpace::uniform()).value;
  });
  for (std::size_t i = 0; i < missing.size(); ++i)
    omega_.emplace(missing[i], vals[i]);
}

BoundReport verify_prop1(const APFunction& f, double p, double q,
                         const RRule& r, const std::vector<int>& n_grid,
                         ApproxCache* cache, LhsCache* lhs) {
  check_pq(p, q, /*need_p_ge_q=*/false);
  for (int n : n_grid)
    if (n < 1) throw invalid_parameter("propositions need n >= 1");
  ApproxCache local(f, p);
  ApproxCache& ac = cache ? *cache : local;
  LhsCache local_lhs;
  LhsCache& lc = lhs ? *lhs : local_lhs;
  proposition_lhs(f, p, q, r, n_grid, lc);

  BoundReport report;
  report.statement = "prop1";
  report.p = p;
  report.q = q;
  report.rhs_zero_tol = 1e-12 * std::max(1.0, ac.norm_f());
  report.notes = {"r_rule=" + r.name, "rhs=stepanov_norm(f)"};
  const double rhs = ac.norm_f();
  for (int n : n_grid) report.rows.push_back({n, lc.values.at(n), rhs, 0.0});
  return finalize(std::move(report));
}

BoundReport verify_prop2(const APFunction& f, double p, double q,
                         const RRule& r, const std::vector<int>& n_grid,
                         const std::string& majorant, ApproxCache* cache,
                         LhsCache* lhs) {
  check_pq(p, q, /*need_p_ge_q=*/false);
  if (majorant != "truncation" && majorant != "jackson")
    throw invalid_parameter("majorant must be 'truncation' or 'jackson'");
  for (int n : n_grid)
    if (n < 1) throw invalid_parameter("propositions need n >= 1");
  ApproxCache local(f, p);
  ApproxCache& ac = cache ? *cache : local;
  LhsCache local_lhs;
  LhsCache& lc = lhs ? *lhs : local_lhs;
  proposition_lhs(f, p, q, r, n_grid, lc);

  const double alpha = f.alpha();
  auto sigma_of = [&](int n) {
    return alpha * (n - checked_r(r, n)) / 2.0;
  };
  std::vector<double> args;
  for (int n : n_grid) {
    const double s = sigma_of(n);
    if (majorant == "truncation")
      args.push_back(s);
    else if (s > 0.0)
      args.push_back(1.0 / s);
  }
  if (majorant == "truncation")
    ac.warm_trunc(args);
  else
    ac.warm_omega(args);

  BoundReport report;
  report.statement = "prop2";
  report.p = p;
  report.q = q;
  report.majorant = majorant;
  report.rhs_zero_tol = 1e-12 * std::max(1.0, ac.norm_f());
  report.notes = {"r_rule=" + r.name, "sigma_n=alpha*(n-r_n)/2"};
  if (majorant == "jackson")
    report.notes.push_back("sigma=0 rows use 2*stepanov_norm(f) as majorant");
  for (int n : n_grid) {
    const double s = sigma_of(n);
    double rhs;
    if (majorant == "truncation")
      rhs = ac.trunc_upper(s);
    else
      rhs = s > 0.0 ? ac.omega(1.0 / s) : 2.0 * ac.norm_f();
    report.rows.push_back({n, lc.values.at(n), rhs, 0.0});
  }
  return finalize(std::move(report));
}

BoundReport verify_thm4(const APFunction& f, double p, double q,
                        const SummabilityMatrix& A, double c,
                        const std::vector<int>& n_grid, ApproxCache* cache,
                        LhsCache* lhs) {
  if (!(c > 1.0)) throw invalid_parameter("c must exceed 1");
  const double alpha = f.alpha();
  const double divisor = std::pow(2.0, std::floor(c)) + 1.0;
  BoundReport report = matrix_statement(
      "thm4", f, p, q, A, c, ClassCheck::gm2beta, RhsKind::trunc,
      [alpha, divisor](int k) { return alpha * k / divisor; }, n_grid, cache,
      lhs, {"sigma_k=alpha*k/(2^[c]+1)"});
  return report;
}

BoundReport verify_thm5(const APFunction& f, double p, double q,
                        const SummabilityMatrix& A,
                        const std::vector<int>& n_grid, ApproxCache* cache,
                        LhsCache* lhs) {
  BoundReport report = matrix_statement(
      "thm5", f, p, q, A, 2.0, ClassCheck::gm2beta, RhsKind::omega,
      [](int k) { return kPi / (k + 1); }, n_grid, cache, lhs,
      {"delta_k=pi/(k+1)", "class check uses c=2"});
  report.c = 0.0;
  return report;
}

BoundReport verify_thm6(const APFunction& f, double p, double q,
                        const SummabilityMatrix& A,
                        const std::vector<int>& n_grid, ApproxCache* cache,
                        LhsCache* lhs) {
  const double alpha = f.alpha();
  BoundReport report = matrix_statement(
      "thm6", f, p, q, A, 2.0, ClassCheck::ms, RhsKind::trunc,
      [alpha](int k) { return alpha * k / 2.0; }, n_grid, cache, lhs,
      {"sigma_k=alpha*k/2",
       "rhs uses q-th powers of E_{alpha k/2}; the printed E_k^p variant "
       "is not implemented"});
  report.c = 0.0;
  return report;
}

BoundReport verify_thm2_periodic(const PeriodicFunction& f, double q,
                                 const SummabilityMatrix& A, double c,
                                 const std::vector<int>& n_grid,
                                 const std::string& variant,
                                 PeriodicApproxCache* cache, LhsCache* lhs) {
  if (!(q > 0.0)) throw invalid_parameter("q must be positive");
  if (variant != "E" && variant != "omega" && variant != "MS")
    throw invalid_parameter("variant must be E, omega or MS");
  if (variant == "E" && !(c > 1.0))
    throw invalid_parameter("c must exceed 1");
  check_matrix_hypotheses(A, n_grid,
                          variant == "MS" ? ClassCheck::ms
                                          : ClassCheck::gm2beta,
                          variant == "E" ? c : 2.0);

  PeriodicApproxCache local(f);
  PeriodicApproxCache& pc = cache ? *cache : local;

  const int k_max = max_support(A, n_grid);
  const int shift = static_cast<int>(std::pow(2.0, std::floor(c)));
  if (variant == "omega") {
    std::vector<double> deltas;
    for (int k = 0; k <= k_max; ++k) deltas.push_back(kPi / (k + 1));
    pc.warm_omega(deltas);
  } else {
    pc.warm_best(k_max);
  }

  LhsCache local_lhs;
  LhsCache& lc = lhs ? *lhs : local_lhs;
  warm_lhs([&](int n) { return A.row(n); }, pc.ap(),
           GammaSequence::integer(), q, NormSpace::uniform(), n_grid, lc);

  BoundReport report;
  report.statement = "thm2";
  report.matrix = A.name();
  report.q = q;
  report.c = variant == "E" ? c : 0.0;
  report.variant = variant;
  report.rhs_zero_tol = 1e-12 * std::max(1.0, pc.norm_f());
  if (variant == "E")
    report.notes = {"rhs index floor(k/2^[c])"};
  else if (variant == "omega")
    report.notes = {"delta_k=pi/(k+1)"};
  else
    report.notes = {"rhs index k (nonincreasing rows)"};
  for (int n : n_grid) {
    const MatrixRow row = A.row(n);
    const double rhs = q_mean(row, q, [&](int k) {
      if (variant == "omega") return pc.omega(kPi / (k + 1));
      return pc.best(variant == "E" ? k / shift : k);
    });
    report.rows.push_back({n, lc.values.at(n), rhs, 0.0});
  }
  return finalize(std::move(report));
}

BoundReport compare_remark7(const APFunction& f, double q,
                            const std::vector<int>& n_grid,
                            ApproxCache* cache) {
  if (!(q >= 2.0)) throw invalid_parameter("comparison requires q >= 2");
  ApproxCache local(f, kInf);
  ApproxCache& ac = cache ? *cache : local;
  if (ac.p() != kInf)
    throw invalid_parameter("remark7 cache must use p = inf");

  const int k_max = n_grid.empty()
                        ? 0
                        : *std::max_element(n_grid.begin(), n_grid.end());
  std::vector<double> deltas;
  for (int k = 0; k <= k_max; ++k) deltas.push_back(kPi / (k + 1));
  ac.warm_omega(deltas);
  const double norm_inf = ac.norm_f();

  const SummabilityMatrix A = SummabilityMatrix::cesaro();
  BoundReport report;
  report.statement = "remark7";
  report.q = q;
  report.matrix = A.name();
  report.notes = {"lhs=older two-term majorant",
                  "rhs=Cesaro omega-form majorant",
                  "lhs-rhs = stepanov_norm(f)/(n+1)^{1/q} exactly"};
  report.rhs_zero_tol = 0.0;
  for (int n : n_grid) {
    const MatrixRow row = A.row(n);
    const double qmean =
        q_mean(row, q, [&](int k) { return ac.omega(kPi / (k + 1)); });
    const double extra = norm_inf / std::pow(n + 1.0, 1.0 / q);
    report.rows.push_back({n, qmean + extra, qmean, 0.0});
  }
  for (auto& row : report.rows) {
    row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
    report.sup_ratio = std::max(report.sup_ratio, row.ratio);
  }
  return report;
}

}  // namespace apsum
