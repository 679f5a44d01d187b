#include <doctest.h>

#include <cmath>
#include <random>

#include "sbconc/conditions.hpp"
#include "sbconc/errors.hpp"
#include "sbconc/special_functions.hpp"
#include "support/oracles.hpp"

using namespace sbconc;
using doctest::Approx;

namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kLambdaStarOneOne = 8.1961524227066318806;  // 3 + 3 sqrt 3
constexpr double kLambdaStarHalfOne = 26.696938456699067651;

// psi(-l M) <= rho(l) and D(l) > 0, straight from the definitions in long double.
bool condition_direct(double a, double M, double g, double l) {
  const long double D = 4.0L * (1.0L + l * M * (a - g) + (M * g * l * l / 4.0L) * (M * g - a));
  if (!(D > 0)) return false;
  const long double rho = 2.0L * M * M * l * l / D;
  return sbconc::testing::psi_ld(-static_cast<long double>(l) * M) <= rho;
}

}  // namespace

TEST_CASE("g_gamma values and pole") {
  CHECK(g_gamma({1, 1, 0}, 2.0) == Approx(2.0));
  CHECK(g_gamma({1, 1, 1}, 1.0) == Approx(1.0));
  CHECK(g_gamma({1, 1, 1}, 2.0 - 1e-9) > 1e8);
  CHECK_THROWS_AS(g_gamma({1, 1, 1}, 2.0), PoleError);
  // G''(0) = M
  const GammaFamily f{0.7, 1.3, 0.4};
  const double h = 1e-4;
  CHECK((g_gamma(f, h) - 2 * g_gamma(f, 0) + g_gamma(f, -h)) / (h * h) == Approx(1.3).epsilon(1e-6));
  CHECK(g_gamma_prime(f, 0.3) ==
        Approx((g_gamma(f, 0.3 + 1e-6) - g_gamma(f, 0.3 - 1e-6)) / 2e-6).epsilon(1e-7));
}

TEST_CASE("d_gamma values") {
  CHECK(d_gamma({0.6, 1.7, 0}, 0.9) == Approx(4 * (1 + 0.9 * 1.7 * 0.6)));
  CHECK(d_gamma({1, 1, 2.0 / 3}, 0.0) == 4.0);
  CHECK(std::fabs(d_gamma({1, 1, 2.0 / 3}, kLambdaStarOneOne)) < 1e-12);
}

TEST_CASE("d_gamma factored form agrees at M = 1") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int checked = 0;
  while (checked < 1000) {
    const GammaFamily f{2 * U(rng), 1.0, 1.5 * U(rng)};
    const double l = -3 + 6 * U(rng);
    if (std::fabs(f.gamma * f.M * l - 2) < 1e-3) continue;
    CHECK(d_gamma_factored(f, l) == Approx(d_gamma(f, l)).epsilon(1e-10));
    ++checked;
  }
}

TEST_CASE("d_gamma factored form differs away from M = 1 by the quadratic term") {
  // Expanding the factored form gives (M g l^2 / 4)(M g - M a) in place of (M g - a).
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const GammaFamily f{2 * U(rng), 0.1 + 3 * U(rng), 1.5 * U(rng)};
    const double l = -3 + 6 * U(rng);
    if (std::fabs(f.gamma * f.M * l - 2) < 1e-3) continue;
    const double gap = f.M * f.gamma * l * l * f.a * (1.0 - f.M);
    CHECK(d_gamma_factored(f, l) - d_gamma(f, l) ==
          Approx(gap).epsilon(1e-9).scale(std::fabs(d_gamma(f, l)) + 1.0));
  }
}

TEST_CASE("rho_gamma values") {
  CHECK(rho_gamma({1, 1, 0}, 1.0) == Approx(0.25));
  CHECK(rho_gamma({1, 1, 0}, 0.0) == 0.0);
  CHECK(rho_gamma({1, 1, 2.0 / 3}, 1.0) == Approx(9.0 / 23.0).epsilon(1e-14));
  CHECK_THROWS_AS(rho_gamma({1, 1, 2.0 / 3}, kLambdaStarOneOne), PoleError);
  CHECK_THROWS_AS(rho_gamma({1, 1, 1}, 2.0), PoleError);
  const GammaFamily f{0.8, 1.4, 0.3};
  CHECK(rho_gamma(f, 1e-4) / 1e-8 == Approx(1.4 * 1.4 / 2).epsilon(1e-3));
}

TEST_CASE("lambda_star closed form matches bisection") {
  CHECK(lambda_star_root(1, 1) == Approx(kLambdaStarOneOne).epsilon(1e-14));
  const double bis = sbconc::testing::bisect(
      [](double l) { return d_gamma({1, 1, 2.0 / 3}, l); }, 0.0, 20.0);
  CHECK(std::fabs(bis - lambda_star_root(1, 1)) < 1e-10);

  CHECK(lambda_star_root(0.5, 1) == Approx(kLambdaStarHalfOne).epsilon(1e-13));
  CHECK(std::fabs(d_gamma({0.5, 1, 0.5 - kThird}, lambda_star_root(0.5, 1))) < 1e-10);

  CHECK_THROWS_AS(lambda_star_root(2, 2), DomainError);
  CHECK_THROWS_AS(lambda_star_root(0.3, 1), DomainError);
}

TEST_CASE("D_{a-1/3} is positive before lambda_star") {
  for (double a : {0.4, 0.7, 1.0, 2.0}) {
    for (double M : {0.3, 0.8, 1.0, 1.2}) {
      if (M * (a - kThird) - a >= 0) continue;
      const double ls = lambda_star_root(a, M);
      const GammaFamily f{a, M, a - kThird};
      for (int i = 0; i < 1000; ++i) CHECK(d_gamma(f, ls * i / 1000.0) > 0.0);
    }
  }
}

TEST_CASE("condition1_holds agrees with the direct inequality") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int mismatches = 0;
  for (int i = 0; i < 20000; ++i) {
    const double a = 1.5 * U(rng);
    const double M = 0.1 + 2.5 * U(rng);
    const double g = U(rng) < 0.5 ? 0.0 : std::max(a - kThird, 0.0);
    const double l = 1e-3 + 5 * U(rng);
    const bool direct = condition_direct(a, M, g, l);
    // Skip points within float noise of the boundary.
    const long double D = 4.0L * (1.0L + l * M * (a - g) + (M * g * l * l / 4.0L) * (M * g - a));
    if (D > 0) {
      const long double rho = 2.0L * M * M * l * l / D;
      const long double p = sbconc::testing::psi_ld(-static_cast<long double>(l) * M);
      if (std::fabs(static_cast<double>(rho - p)) < 1e-9 * static_cast<double>(p)) continue;
    }
    if (condition1_holds({a, M, g}, l) != direct) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK_THROWS_AS(condition1_holds({1, 1, 0}, 0.0), DomainError);
}

TEST_CASE("condition1 near zero follows the series sign") {
  // gamma = 0: holds for small lambda > 0 iff a <= 1/3.
  CHECK(condition1_holds({0.25, 1, 0}, 1e-8));
  CHECK_FALSE(condition1_holds({0.5, 1, 0}, 1e-8));
  // gamma = a - 1/3: the leading coefficient vanishes; still holds.
  CHECK(condition1_holds({1.0, 1.0, 2.0 / 3}, 1e-8));
  // Negative lambda with gamma = 0 and a >= 1/3 holds.
  CHECK(condition1_holds({0.5, 1, 0}, -1e-8));
}

TEST_CASE("condition1 on the negative branch for a >= 1/3") {
  for (double a : {kThird, 0.5, 1.0, 2.0}) {
    for (double M : {0.5, 1.0, 2.0}) {
      const double lo = -1.0 / (a * M);
      for (int i = 1; i < 2000; ++i) {
        const double l = lo * i / 2000.0;
        CHECK(condition1_holds({a, M, 0.0}, l));
      }
    }
  }
}

TEST_CASE("condition1 holds up to lambda_star for 1/2 < M <= 1") {
  for (double a : {0.4, 0.6, 1.0, 1.5}) {
    for (double M : {0.55, 0.75, 1.0}) {
      const double ls = lambda_star_root(a, M);
      const GammaFamily f{a, M, a - kThird};
      for (int i = 1; i < 2000; ++i) CHECK(condition1_holds(f, ls * i / 2000.0));
    }
  }
}

TEST_CASE("check_condition1 reproduces the reported endpoints") {
  const auto i19 = check_condition1({1, 1.9, 2.0 / 3}, 10.0);
  CHECK_FALSE(i19.empty);
  CHECK(i19.hi >= 1.05);
  CHECK(i19.hi <= 1.15);

  const auto i18 = check_condition1({1, 1.8, 2.0 / 3}, 10.0);
  CHECK(i18.hi >= 2.58);
  CHECK(i18.hi <= 2.68);

  // a <= 1/3 with gamma = 0: holds on the whole range.
  const auto full = check_condition1({0.25, 1, 0}, 10.0);
  CHECK(full.reached_limit);
  CHECK(full.hi == 10.0);

  // a > 1/3 with gamma = 0 fails immediately.
  const auto none = check_condition1({1, 1, 0}, 10.0);
  CHECK(none.empty);
}

TEST_CASE("check_condition1 bisection is sharp") {
  const GammaFamily f{1, 1.9, 2.0 / 3};
  const auto iv = check_condition1(f, 10.0);
  CHECK(condition1_holds(f, iv.hi - 1e-6));
  CHECK_FALSE(condition1_holds(f, iv.hi + 1e-6));
}

TEST_CASE("check_condition1 argument checks") {
  CHECK_THROWS_AS(check_condition1({1, 1, 0}, 0.0), DomainError);
  CHECK_THROWS_AS(check_condition1({1, 1, 0}, 1.0, 999), DomainError);
}

TEST_CASE("check_condition2_upper") {
  const SelfBoundingParams p{1, 1, 0, 5};
  CHECK(std::isinf(check_condition2_upper({1, 1.8, 2.0 / 3}, p, 2.63)));
  CHECK(check_condition2_upper({1, 1, 2.0 / 3}, p, 1.0) == Approx(9.375).epsilon(1e-14));
  CHECK(check_condition2_upper({1, 1, 2.0 / 3}, p, 1e-9) < 1e-6);
  CHECK_THROWS_AS(check_condition2_upper({0.3, 1, 0}, p, 1.0), DomainError);
}

TEST_CASE("condition_report") {
  const SelfBoundingParams p{1, 1, 0, 5};

  const auto small = condition_report(0.25, 1.0, p);
  CHECK(small.delta.case_label == DeltaCase::small_a);
  CHECK(small.gamma0_interval.reached_limit);
  CHECK(std::isinf(small.t_max));

  const auto one = condition_report(1.0, 1.0, p);
  REQUIRE(one.lambda_star.has_value());
  CHECK(*one.lambda_star == Approx(kLambdaStarOneOne).epsilon(1e-14));
  CHECK(one.condition1_satisfied);
  CHECK(one.d_positive);
  CHECK(one.condition1_interval.hi == Approx(kLambdaStarOneOne).epsilon(1e-6));
  CHECK(one.improved_branch_applicable);

  const auto ext = condition_report(1.0, 1.9, p);
  REQUIRE(ext.lambda_tilde.has_value());
  CHECK(*ext.lambda_tilde == Approx(1.1).epsilon(0.05));
  CHECK_FALSE(ext.improved_branch_applicable);
  CHECK(ext.numerical_extension);
  CHECK_FALSE(ext.lambda_star.has_value());

  const auto e18 = condition_report(1.0, 1.8, p);
  REQUIRE(e18.lambda_tilde.has_value());
  CHECK(std::isinf(e18.t_max));
  CHECK(e18.condition2_satisfied);

  const auto rem = condition_report(1.0, 0.4, p);
  CHECK(rem.remark_regime);
  CHECK(rem.t_max == Approx(203.92304845413263761).epsilon(1e-12));

  // Degenerate v leaves t_max at 0 instead of throwing.
  const auto deg = condition_report(1.0, 0.4, SelfBoundingParams{1, 1, 0, 0});
  CHECK(deg.t_max == 0.0);
}

TEST_CASE("default scan range") {
  CHECK(default_lambda_max({1, 1, 0}) == 1e3);
  CHECK(default_lambda_max({1, 2, 0.5}) == Approx(4.0));
}
