#include "sbconc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sbconc/errors.hpp"
#include "sbconc/special_functions.hpp"

namespace sbconc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThird = 1.0 / 3.0;
constexpr double kSeriesLambda = 1e-6;
constexpr int kBisectionSteps = 60;

// D_gamma / 4 written in y = lambda M: 1 + beta y + kappa y^2.
struct Quadratic {
  double beta;
  double kappa;
};

Quadratic d_coefficients(const GammaFamily& fam) {
  return {fam.a - fam.gamma, fam.gamma * (fam.M * fam.gamma - fam.a) / (4.0 * fam.M)};
}

// Sign of rho_gamma - psi(-y) as y -> 0, from
// (rho - psi)/y^2 = (1/6 - beta/2) y + ((beta^2 - kappa)/2 - 1/24) y^2 + O(y^3).
bool series_sign_nonnegative(const Quadratic& q, double y) {
  const double c1 = 1.0 / 6.0 - q.beta / 2.0;
  if (std::fabs(c1) > 1e-12) return c1 * y > 0.0;
  const double c2 = (q.beta * q.beta - q.kappa) / 2.0 - 1.0 / 24.0;
  return c2 >= -1e-12;
}

void validate_family(const GammaFamily& fam) {
  if (!(fam.M > 0.0) || fam.a < 0.0 || fam.gamma < 0.0) {
    throw DomainError("gamma family requires M > 0, a >= 0, gamma >= 0");
  }
}

}  // namespace

double g_gamma(const GammaFamily& fam, double lambda) {
  const double shrink = 1.0 - fam.gamma * lambda * fam.M / 2.0;
  if (shrink == 0.0) throw PoleError("G_gamma: pole at lambda = 2/(gamma M)");
  return fam.M * lambda * lambda / (2.0 * shrink);
}

double g_gamma_prime(const GammaFamily& fam, double lambda) {
  const double c = fam.gamma * fam.M / 2.0;
  const double shrink = 1.0 - c * lambda;
  if (shrink == 0.0) throw PoleError("G'_gamma: pole at lambda = 2/(gamma M)");
  return fam.M * lambda * (2.0 - c * lambda) / (2.0 * shrink * shrink);
}

double d_gamma(const GammaFamily& fam, double lambda) {
  const double M = fam.M;
  return 4.0 * (1.0 + lambda * M * (fam.a - fam.gamma) +
                (M * fam.gamma * lambda * lambda / 4.0) * (M * fam.gamma - fam.a));
}

double d_gamma_factored(const GammaFamily& fam, double lambda) {
  const double lead = fam.M * fam.gamma * lambda - 2.0;
  return lead * lead * (1.0 + fam.a * g_gamma_prime(fam, lambda));
}

double rho_gamma(const GammaFamily& fam, double lambda) {
  if (fam.M * fam.gamma * lambda == 2.0) {
    throw PoleError("rho_gamma: undefined at M gamma lambda = 2");
  }
  const double d = d_gamma(fam, lambda);
  if (d == 0.0) throw PoleError("rho_gamma: D_gamma vanishes");
  return 2.0 * fam.M * fam.M * lambda * lambda / d;
}

double lambda_star_root(double a, double M) {
  if (!(M > 0.0)) throw DomainError("lambda_star_root: M must be positive");
  if (!(a > kThird)) throw DomainError("lambda_star_root: requires a > 1/3");
  const double g = a - kThird;
  const double k = M * g - a;
  if (!(k < 0.0)) {
    throw DomainError("lambda_star_root: requires M (a - 1/3) - a < 0, got " + std::to_string(k));
  }
  // Numerator and denominator are both negative; neither involves cancellation.
  const double num = -M / 3.0 - std::sqrt(M * M / 9.0 - M * g * k);
  const double den = (M / 2.0) * g * k;
  return num / den;
}

bool condition1_holds(const GammaFamily& fam, double lambda) {
  if (lambda == 0.0) throw DomainError("condition1_holds: lambda must be nonzero");
  const auto q = d_coefficients(fam);
  const double y = lambda * fam.M;
  if (std::fabs(lambda) <= kSeriesLambda) return series_sign_nonnegative(q, y);
  const double d4 = 1.0 + q.beta * y + q.kappa * y * y;
  if (!(d4 > 0.0)) return false;
  // psi(-y) <= y^2 / (2 d4)  <=>  (1 - d4) / (2 d4) + (1/2 - psi(-y)/y^2) >= 0
  return -(q.beta * y + q.kappa * y * y) / (2.0 * d4) + psi_quadratic_gap(y) >= 0.0;
}

double default_lambda_max(const GammaFamily& fam) {
  return std::min(1e3, 4.0 / (std::max(fam.gamma, 1e-3) * fam.M));
}

Interval check_condition1(const GammaFamily& fam, double lambda_max, std::size_t grid_n,
                          const ExecPolicy& policy) {
  validate_family(fam);
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw DomainError("check_condition1: lambda_max must be positive and finite");
  }
  if (grid_n < 1000) throw DomainError("check_condition1: grid_n must be >= 1000");

  Interval out;
  if (!series_sign_nonnegative(d_coefficients(fam), std::min(kSeriesLambda, lambda_max) * fam.M)) {
    out.empty = true;
    return out;
  }

  const double step = lambda_max / static_cast<double>(grid_n);
  auto grid_point = [&](std::size_t k) {
    return k == grid_n ? lambda_max : step * static_cast<double>(k);
  };
  const std::size_t fail = kernels::first_failure(
      0, grid_n, [&](std::size_t i) { return condition1_holds(fam, grid_point(i + 1)); }, policy);

  if (fail == kernels::kNone) {
    out.hi = lambda_max;
    out.reached_limit = true;
    return out;
  }
  double lo = grid_point(fail);  // 0 when the very first node fails
  double hi = grid_point(fail + 1);
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (condition1_holds(fam, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.hi = lo;
  out.empty = !(lo > 0.0);
  return out;
}

double check_condition2_upper(const GammaFamily& fam, const SelfBoundingParams& p,
                              double lambda_tilde) {
  if (!(fam.a > kThird)) throw DomainError("check_condition2_upper: requires a > 1/3");
  if (!(lambda_tilde > 0.0)) throw DomainError("check_condition2_upper: lambda_tilde must be > 0");
  const double g = fam.a - kThird;
  const double w = 1.0 - (lambda_tilde / 2.0) * g * fam.M;
  if (w <= 0.0) return kInf;
  return p.variance_proxy() / g * (1.0 / (w * w) - 1.0);
}

ConditionReport condition_report(double a, double M, const SelfBoundingParams& p,
                                  std::size_t grid_n, const ExecPolicy& policy,
                                  std::optional<double> lambda_max_override) {
  ConditionReport r;
  r.a = a;
  r.M = M;
  r.delta = delta_plus(a, M);
  r.gamma_improved = std::max(a - kThird, 0.0);
  r.improved_branch_applicable =
      r.delta.case_label == DeltaCase::mid_m || r.delta.case_label == DeltaCase::large_m_small_a;

  const GammaFamily fam0{a, M, 0.0};
  r.gamma0_interval =
      check_condition1(fam0, lambda_max_override.value_or(default_lambda_max(fam0)), grid_n, policy);

  if (!(a > kThird)) {
    // delta_+ = 0: gamma = 0, D_0 = 4(1 + lambda M a) > 0 on lambda >= 0.
    r.condition1_interval = r.gamma0_interval;
    r.d_positive_interval = Interval{0.0, kInf, false, true};
    r.d_positive = true;
    r.condition1_satisfied = !r.condition1_interval.empty;
    r.condition2_satisfied = true;
    r.t_max = kInf;
    return r;
  }

  const GammaFamily fam{a, M, r.gamma_improved};
  const double k = M * r.gamma_improved - a;
  double lambda_max = default_lambda_max(fam);
  if (k < 0.0) {
    try {
      r.lambda_star = lambda_star_root(a, M);
      r.d_positive_interval = Interval{0.0, *r.lambda_star, false, false};
      lambda_max = std::min(1e3, std::max(lambda_max, 1.5 * *r.lambda_star));
    } catch (const DomainError&) {
      r.d_positive_interval = Interval{0.0, 0.0, true, false};
    }
  } else {
    r.d_positive_interval = Interval{0.0, kInf, false, true};
    r.numerical_extension = true;
  }
  r.d_positive = !r.d_positive_interval.empty;
  if (lambda_max_override) lambda_max = *lambda_max_override;

  r.condition1_interval = check_condition1(fam, lambda_max, grid_n, policy);
  r.condition1_satisfied = !r.condition1_interval.empty;
  if (r.condition1_satisfied && !r.condition1_interval.reached_limit) {
    r.lambda_tilde = r.condition1_interval.hi;
  }

  SelfBoundingParams q = p;
  q.a = a;
  q.M = M;
  r.remark_regime = M <= 0.5;
  r.t_max = 0.0;
  try {
    if (r.remark_regime) {
      r.t_max = remark_threshold(q);
    } else if (r.condition1_satisfied) {
      r.t_max = check_condition2_upper(fam, q, r.condition1_interval.hi);
    }
  } catch (const std::logic_error&) {
    // a E[Z] + b = 0 leaves no admissible t; t_max stays 0.
  }
  r.condition2_satisfied = std::isinf(r.t_max);
  return r;
}

}  // namespace sbconc
