#include "sbconc/special_functions.hpp"

#include <cmath>
#include <string>

#include "sbconc/errors.hpp"

namespace sbconc {

namespace {

constexpr double kPsiSeriesCutoff = 1e-4;
constexpr double kMuSeriesCutoff = 1e-4;
constexpr double kGapSeriesCutoff = 1e-2;

}  // namespace

double psi(double x) {
  if (std::fabs(x) < kPsiSeriesCutoff) {
    // x^2/2 + x^3/6 + x^4/24 + x^5/120; truncation is O(x^6).
    return x * x * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x / 120.0)));
  }
  return std::expm1(x) - x;
}

double alpha(double x, double lambda) {
  if (!(x > 0.0)) {
    throw DomainError("alpha: x must be positive, got " + std::to_string(x));
  }
  if (lambda == 0.0) {
    throw DomainError("alpha: lambda must be nonzero");
  }
  return psi(-lambda * x) / (x * psi(-lambda));
}

double s_func(double x) {
  if (x < -0.5) {
    throw DomainError("s: x must be >= -1/2, got " + std::to_string(x));
  }
  // (1 + x)^2 - (1 + 2x) = x^2, so the difference needs no subtraction.
  return x * x / (1.0 + x + std::sqrt(1.0 + 2.0 * x));
}

double y_func(double x) {
  if (!(x > -1.0)) {
    throw DomainError("y: x must be > -1, got " + std::to_string(x));
  }
  return x * x / (1.0 + x);
}

double mu(double lambda, double M) {
  if (lambda == 0.0) {
    throw DomainError("mu: lambda must be nonzero (limit at 0 is 1/3)");
  }
  if (!(M > 0.0)) {
    throw DomainError("mu: M must be positive");
  }
  const double y = lambda * M;
  if (std::fabs(y) < kMuSeriesCutoff) {
    // Both numerator and denominator carry a common factor y^3.
    const double num = 2.0 / 3.0 + y * (-1.0 / 6.0 + y * (1.0 / 30.0 - y / 180.0));
    const double den = 2.0 + y * (-2.0 / 3.0 + y * (1.0 / 6.0 - y / 30.0));
    return num / den;
  }
  const double p = psi(-y);
  if (p == 0.0) {
    throw DomainError("mu: psi(-lambda M) vanished");
  }
  return (2.0 * y * y - 4.0 * p) / (4.0 * y * p);
}

double psi_quadratic_gap(double y) {
  if (y == 0.0) return 0.0;
  if (std::fabs(y) < kGapSeriesCutoff) {
    // y/6 - y^2/24 + y^3/120 - y^4/720 + y^5/5040 - y^6/40320
    return y * (1.0 / 6.0 +
                y * (-1.0 / 24.0 +
                     y * (1.0 / 120.0 +
                          y * (-1.0 / 720.0 + y * (1.0 / 5040.0 - y / 40320.0)))));
  }
  return 0.5 - psi(-y) / (y * y);
}

}  // namespace sbconc
