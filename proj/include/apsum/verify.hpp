#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "apsum/apfun.hpp"
#include "apsum/norms.hpp"
#include "apsum/seqclass.hpp"
#include "apsum/summation.hpp"

namespace apsum {

// Window length rule r_n for the delayed means in the propositions.
struct RRule {
  std::function<int(int)> fn;
  std::string name;

  // r_n = ceil(n/2); satisfies n = O(r_n) with constant 2.
  static RRule half();
};

struct BoundRow {
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// Per-n table of one tested inequality. The statements carry unspecified
// constants, so acceptance is boundedness of the ratios over the grid,
// never a fixed value.
struct BoundReport {
  std::string statement;
  std::string fixture;
  std::string matrix;
  double p = 0.0;
  double q = 0.0;
  double c = 0.0;
  std::string majorant;  // "truncation" or "jackson" where applicable
  std::string variant;   // thm2: "E", "omega" or "MS"
  std::vector<BoundRow> rows;
  double sup_ratio = 0.0;
  bool consistent = true;  // rhs == 0 implies lhs == 0
  double rhs_zero_tol = 0.0;
  double lhs_zero_tol = 1e-9;
  std::vector<std::string> notes;

  // Running sup of ratios over rows with n <= n_max.
  double sup_ratio_through(int n_max) const;
};

// Memoized approximation quantities for one (f, p) pair; shared across
// statements to avoid recomputing norms, truncation bounds and moduli.
class ApproxCache {
 public:
  ApproxCache(APFunction f, double p);

  const APFunction& fn() const { return f_; }
  double p() const { return p_; }

  double norm_f();
  double trunc_upper(double sigma);
  double omega(double delta);

  void warm_trunc(const std::vector<double>& sigmas);
  void warm_omega(const std::vector<double>& deltas);

 private:
  APFunction f_;
  double p_;
  NormSpace space_;
  double norm_f_ = -1.0;
  std::map<std::size_t, double> trunc_by_cut_;  // keyed by spectral cut
  std::map<double, double> omega_;
};

// Uniform-norm analog for periodic fixtures: Remez best approximations
// and the modulus of continuity.
class PeriodicApproxCache {
 public:
  explicit PeriodicApproxCache(PeriodicFunction f);

  const PeriodicFunction& fn() const { return f_; }
  const APFunction& ap() const { return ap_; }

  double norm_f();
  double best(int k);
  double omega(double delta);

  void warm_best(int k_max);
  void warm_omega(const std::vector<double>& deltas);

 private:
  PeriodicFunction f_;
  APFunction ap_;
  double norm_f_ = -1.0;
  std::map<int, double> best_;
  std::map<double, double> omega_;
};

// Optional cache of left-hand-side norms keyed by n, shared between
// statements with the same (f, matrix, gamma, q, space) family.
struct LhsCache {
  std::map<int, double> values;
};

std::vector<int> n_range(int lo, int hi);

BoundReport verify_prop1(const APFunction& f, double p, double q,
                         const RRule& r, const std::vector<int>& n_grid,
                         ApproxCache* cache = nullptr,
                         LhsCache* lhs = nullptr);

BoundReport verify_prop2(const APFunction& f, double p, double q,
                         const RRule& r, const std::vector<int>& n_grid,
                         const std::string& majorant,
                         ApproxCache* cache = nullptr,
                         LhsCache* lhs = nullptr);

BoundReport verify_thm4(const APFunction& f, double p, double q,
                        const SummabilityMatrix& A, double c,
                        const std::vector<int>& n_grid,
                        ApproxCache* cache = nullptr, LhsCache* lhs = nullptr);

BoundReport verify_thm5(const APFunction& f, double p, double q,
                        const SummabilityMatrix& A,
                        const std::vector<int>& n_grid,
                        ApproxCache* cache = nullptr, LhsCache* lhs = nullptr);

BoundReport verify_thm6(const APFunction& f, double p, double q,
                        const SummabilityMatrix& A,
                        const std::vector<int>& n_grid,
                        ApproxCache* cache = nullptr, LhsCache* lhs = nullptr);

BoundReport verify_thm2_periodic(const PeriodicFunction& f, double q,
                                 const SummabilityMatrix& A, double c,
                                 const std::vector<int>& n_grid,
                                 const std::string& variant,
                                 PeriodicApproxCache* cache = nullptr,
                                 LhsCache* lhs = nullptr);

// Cesaro-weight comparison of the omega-form bound against the older
// two-term bound. The lhs column holds the older majorant, the rhs column
// the new one; their difference is ||f||_{S^inf} / (n+1)^{1/q} exactly.
BoundReport compare_remark7(const APFunction& f, double q,
                            const std::vector<int>& n_grid,
                            ApproxCache* cache = nullptr);

}  // namespace apsum
