#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbconc/errors.hpp"
#include "sbconc/special_functions.hpp"
#include "support/oracles.hpp"

using namespace sbconc;
using doctest::Approx;

namespace {

// Values computed once with 30-digit mpmath and frozen here.
constexpr double kPsiOne = 0.71828182845904523536;
constexpr double kPsiMinusOne = 0.36787944117144232160;
constexpr double kAlphaTwoOne = 1.5430806348152437785;
constexpr double kAlphaHalfOne = 0.57916071294121105834;
constexpr double kMuOneOne = 0.35914091422952261768;
constexpr double kMuMinusHalfOne = 0.31900306645386546216;
constexpr double kMuTinyOne = 0.33333361111092592577;  // lambda = 1e-5

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("psi reference values") {
  CHECK(psi(0.0) == 0.0);
  CHECK(psi(1.0) == Approx(kPsiOne).epsilon(1e-15));
  CHECK(psi(-1.0) == Approx(kPsiMinusOne).epsilon(1e-15));
  CHECK(std::isinf(psi(1000.0)));
}

TEST_CASE("psi is continuous across the series cutoff") {
  for (double x : {-2e-4, -1.0001e-4, -0.9999e-4, 0.9999e-4, 1.0001e-4, 2e-4, 1e-8, -1e-8}) {
    const long double ref = sbconc::testing::psi_ld(x);
    CHECK(psi(x) == Approx(double(ref)).epsilon(1e-10));
  }
}

TEST_CASE("psi is nonnegative and zero only at zero") {
  for (double x = -20.0; x <= 20.0; x += 0.01) {
    if (std::fabs(x) < 1e-12) continue;
    CHECK(psi(x) > 0.0);
  }
}

TEST_CASE("psi(-x) against x^2/2") {
  for (double x : log_grid(1e-6, 1e3, 10000)) {
    CHECK(psi(-x) <= x * x / 2);
    CHECK(psi(x) >= x * x / 2);
  }
}

TEST_CASE("alpha reference values and domain") {
  CHECK(alpha(1.0, 0.7) == Approx(1.0).epsilon(1e-15));
  CHECK(alpha(1.0, -3.0) == Approx(1.0).epsilon(1e-15));
  CHECK(alpha(2.0, 1.0) == Approx(kAlphaTwoOne).epsilon(1e-14));
  CHECK(alpha(0.5, 1.0) == Approx(kAlphaHalfOne).epsilon(1e-14));
  CHECK_THROWS_AS(alpha(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(alpha(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(alpha(1.0, 0.0), DomainError);
}

TEST_CASE("alpha is nondecreasing in x") {
  for (double lambda = -10.0; lambda <= 10.0; lambda += 0.25) {
    if (lambda == 0.0) continue;
    double prev = alpha(0.01, lambda);
    for (double x = 0.02; x <= 5.0; x += 0.01) {
      const double cur = alpha(x, lambda);
      CHECK(cur >= prev * (1 - 1e-12));
      prev = cur;
    }
  }
}

TEST_CASE("s and y exact values") {
  CHECK(s_func(0.0) == 0.0);
  CHECK(s_func(4.0) == 2.0);
  CHECK(s_func(1.5) == 0.5);
  CHECK(s_func(-0.5) == Approx(0.5 - 0.0).epsilon(1e-15));
  CHECK_THROWS_AS(s_func(-0.51), DomainError);
  CHECK(y_func(0.0) == 0.0);
  CHECK(y_func(1.0) == 0.5);
  CHECK(y_func(3.0) == 2.25);
  CHECK_THROWS_AS(y_func(-1.0), DomainError);
}

TEST_CASE("s agrees with its defining form away from cancellation") {
  for (double x = -0.5; x <= 50.0; x += 0.37) {
    const long double ref = 1.0L + x - std::sqrt(1.0L + 2.0L * x);
    CHECK(s_func(x) == Approx(double(ref)).epsilon(1e-12));
  }
}

TEST_CASE("2 s(x) >= y(x)") {
  for (int i = 0; i <= 10000; ++i) {
    const double x = 1e3 * i / 10000.0;
    CHECK(2 * s_func(x) >= y_func(x) * (1 - 1e-14));
  }
  for (int i = 0; i <= 10000; ++i) {
    const double x = 0.5 * i / 10000.0;
    CHECK(2 * s_func(-x) >= y_func(x) * (1 - 1e-14));
  }
}

TEST_CASE("mu reference values") {
  CHECK(mu(1.0, 1.0) == Approx(kMuOneOne).epsilon(1e-13));
  CHECK(mu(-0.5, 1.0) == Approx(kMuMinusHalfOne).epsilon(1e-13));
  CHECK(mu(1e-5, 1.0) == Approx(kMuTinyOne).epsilon(1e-12));
  CHECK(std::fabs(mu(1e-5, 1.0) - kMuLimitAtZero) < 1e-6);
  CHECK_THROWS_AS(mu(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(mu(1.0, 0.0), DomainError);
}

TEST_CASE("mu depends only on lambda M") {
  CHECK(mu(0.5, 2.0) == Approx(mu(1.0, 1.0)).epsilon(1e-15));
  CHECK(mu(-0.25, 4.0) == Approx(mu(-1.0, 1.0)).epsilon(1e-15));
}

TEST_CASE("mu is smooth across the series cutoff") {
  // Long double evaluation of the defining expression is accurate enough
  // just outside the cutoff to pin both sides.
  for (double y : {9.99e-5, 1.001e-4, -9.99e-5, -1.001e-4, 3e-4, -3e-4}) {
    const long double p = sbconc::testing::psi_ld(-static_cast<long double>(y));
    const long double ref = (2.0L * y * y - 4.0L * p) / (4.0L * y * p);
    CHECK(mu(y, 1.0) == Approx(double(ref)).epsilon(1e-7));
  }
}

TEST_CASE("mu is nondecreasing on positive lambda") {
  for (double M : {0.5, 1.0, 1.9}) {
    double prev = mu(1e-6, M);
    for (double l = 1e-3; l <= 50.0; l += 1e-3) {
      const double cur = mu(l, M);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("mu on negative lambda stays below one third") {
  for (double l = -5.0; l < 0.0; l += 0.01) {
    CHECK(mu(l, 1.0) < kMuLimitAtZero);
  }
}

TEST_CASE("psi_quadratic_gap matches its definition") {
  CHECK(psi_quadratic_gap(0.0) == 0.0);
  for (double y : {-3.0, -0.5, -0.011, -0.009, -1e-5, 1e-5, 0.009, 0.011, 0.5, 3.0, 30.0}) {
    const long double p = sbconc::testing::psi_ld(-static_cast<long double>(y));
    const long double ref = 0.5L - p / (static_cast<long double>(y) * y);
    CHECK(psi_quadratic_gap(y) == Approx(double(ref)).epsilon(1e-9));
  }
}
