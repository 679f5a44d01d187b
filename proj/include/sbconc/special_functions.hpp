#pragma once

// Scalar building blocks shared by the bounds, the condition checker and the
// inequality property tests. All functions are pure and thread-safe.

namespace sbconc {

/// psi(x) = e^x - x - 1. Nonnegative, zero only at x = 0. Overflows to +inf
/// for large positive x.
double psi(double x);

/// alpha(x, lambda) = psi(-lambda x) / (x psi(-lambda)).
/// Throws DomainError for x <= 0 or lambda == 0.
double alpha(double x, double lambda);

/// s(x) = 1 + x - sqrt(1 + 2x), evaluated as x^2 / (1 + x + sqrt(1 + 2x)).
/// Throws DomainError for x < -1/2.
double s_func(double x);

/// y(x) = x^2 / (1 + x). Throws DomainError for x <= -1.
double y_func(double x);

/// mu(lambda, M) = (2 M^2 lambda^2 - 4 psi(-lambda M)) / (4 lambda M psi(-lambda M)).
///
/// The same expression is the mu_2 threshold on the negative-lambda branch.
/// Depends on lambda and M only through y = lambda M; for |y| < 1e-4 the
/// value comes from a fourth-order expansion of e^{-y}, which avoids the
/// cancellation in both numerator and denominator. Tends to 1/3 as
/// lambda -> 0 but throws DomainError at lambda == 0 (use kMuLimitAtZero).
double mu(double lambda, double M);

inline constexpr double kMuLimitAtZero = 1.0 / 3.0;

/// 1/2 - psi(-y)/y^2, the normalised gap between psi(-y) and its quadratic
/// majorant. Series for |y| < 1e-2, direct otherwise. Defined as 0 at y = 0.
double psi_quadratic_gap(double y);

}  // namespace sbconc
