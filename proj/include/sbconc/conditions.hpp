#pragma once

#include <cstddef>
#include <optional>

#include "sbconc/bounds.hpp"
#include "sbconc/kernels.hpp"

namespace sbconc {

/// One member of the ODE solution family G_gamma used to certify the improved
/// bounds; gamma = 0 and gamma = a - 1/3 are the cases of interest.
struct GammaFamily {
  double a = 1.0;
  double M = 1.0;
  double gamma = 0.0;
};

/// G_gamma(lambda) = M lambda^2 / (2 (1 - gamma lambda M / 2)).
/// Throws PoleError at lambda = 2/(gamma M).
double g_gamma(const GammaFamily& fam, double lambda);

/// d/dlambda G_gamma = M lambda (2 - c lambda) / (2 (1 - c lambda)^2), c = gamma M / 2.
double g_gamma_prime(const GammaFamily& fam, double lambda);

/// D_gamma(lambda) = 4 (1 + lambda M (a - gamma) + (M gamma lambda^2 / 4)(M gamma - a)).
double d_gamma(const GammaFamily& fam, double lambda);

/// The same quantity in its defining form (M gamma lambda - 2)^2 (1 + a G'_gamma).
/// Undefined at the pole of G_gamma.
double d_gamma_factored(const GammaFamily& fam, double lambda);

/// rho_gamma(lambda) = 2 M^2 lambda^2 / D_gamma(lambda).
/// Throws PoleError where D_gamma = 0 or M gamma lambda = 2.
double rho_gamma(const GammaFamily& fam, double lambda);

/// Positive root of D_{a-1/3}. Requires a > 1/3 and M (a - 1/3) - a < 0;
/// throws DomainError otherwise.
double lambda_star_root(double a, double M);

/// psi(-lambda M) <= rho_gamma(lambda) and D_gamma(lambda) > 0 at a single
/// lambda != 0. Evaluated in a form divided through by (lambda M)^2, and by
/// the leading Maclaurin coefficients for |lambda| <= 1e-6.
bool condition1_holds(const GammaFamily& fam, double lambda);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = false;
  /// The inequality held on the whole scanned range (0, lambda_max]; hi is
  /// then lambda_max and only a lower bound on the true endpoint.
  bool reached_limit = false;
};

inline constexpr std::size_t kDefaultConditionGrid = 10000;

/// 4 / (max(gamma, 1e-3) M), capped at 1e3.
double default_lambda_max(const GammaFamily& fam);

/// Maximal (0, hi) inside (0, lambda_max] on which condition1_holds, found by
/// a uniform grid of grid_n points and 60 bisection steps on the first
/// failing cell. Throws DomainError for lambda_max <= 0 or grid_n < 1000.
Interval check_condition1(const GammaFamily& fam, double lambda_max,
                          std::size_t grid_n = kDefaultConditionGrid,
                          const ExecPolicy& policy = {});

/// Largest t for which the Chernoff optimiser with coefficient a - 1/3 stays
/// below lambda_tilde; +inf when 1 - (lambda_tilde/2)(a - 1/3) M <= 0.
/// fam supplies a and M, p supplies E[Z] and b. Throws DomainError for a <= 1/3.
double check_condition2_upper(const GammaFamily& fam, const SelfBoundingParams& p,
                              double lambda_tilde);

struct ConditionReport {
  double a = 0.0;
  double M = 0.0;
  DeltaValue delta;
  double gamma_improved = 0.0;    // max(a - 1/3, 0)
  Interval gamma0_interval;       // Condition 1 with gamma = 0
  Interval condition1_interval;   // Condition 1 with gamma = gamma_improved
  Interval d_positive_interval;   // D_{gamma_improved} > 0 on (0, hi)
  std::optional<double> lambda_star;
  std::optional<double> lambda_tilde;
  bool condition1_satisfied = false;
  bool d_positive = false;
  /// The optimiser stays inside the certified interval for every t > 0.
  bool condition2_satisfied = false;
  double t_max = 0.0;
  /// delta_+ takes the a - 1/3 branch of the piecewise definition.
  bool improved_branch_applicable = false;
  /// a > 1/3 and M (a - 1/3) - a >= 0: only the numerical extension applies.
  bool numerical_extension = false;
  /// 0 < M <= 1/2 and a > 1/3: t_max comes from the strengthened-remark threshold.
  bool remark_regime = false;
};

/// Runs the checks above for gamma in {0, max(a - 1/3, 0)} and packages them.
/// Sub-results that cannot be computed are left absent. lambda_max_override
/// replaces the automatically chosen scan range for both families.
ConditionReport condition_report(double a, double M, const SelfBoundingParams& p,
                                 std::size_t grid_n = kDefaultConditionGrid,
                                 const ExecPolicy& policy = {},
                                 std::optional<double> lambda_max_override = std::nullopt);

}  // namespace sbconc
