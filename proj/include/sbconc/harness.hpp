#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbconc/bounds.hpp"
#include "sbconc/instance.hpp"
#include "sbconc/kernels.hpp"

namespace sbconc {

// ---------------------------------------------------------------------------
// Definition check
// ---------------------------------------------------------------------------

enum class ViolationKind { negative_value, negative_difference, difference_above_m, sum_above_bound };

std::string_view to_string(ViolationKind kind);

struct Violation {
  std::size_t sample = 0;
  std::optional<std::size_t> coordinate;
  ViolationKind kind = ViolationKind::sum_above_bound;
  double observed = 0.0;
  double limit = 0.0;
  std::vector<int> x;
};

struct SelfBoundingReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  SelfBoundingParams checked;
  std::size_t violation_count = 0;
  double max_difference = 0.0;  // max_i f(x) - f_i(x^(i))
  double min_difference = 0.0;
  double max_slack = 0.0;       // max_x sum_i (f - f_i) - (a f + b); <= 0 when satisfied
  std::vector<Violation> witnesses;  // first few, in sample order
};

inline constexpr std::size_t kMaxWitnesses = 16;

/// Samples `samples` points and checks 0 <= f(x) - f_i(x^(i)) <= M and
/// sum_i (f(x) - f_i(x^(i))) <= a f(x) + b, with f_i the infimum over the
/// i-th coordinate by exhaustive enumeration of its alphabet (or the
/// instance's infimum oracle when supplied). `claim` overrides the
/// instance's claimed parameters, e.g. M = 1 for the plain (a,b) definition.
/// Violations are reported, never thrown.
SelfBoundingReport check_self_bounding(const SelfBoundingInstance& inst, std::size_t samples,
                                       std::uint64_t seed, const ExecPolicy& policy = {},
                                       std::optional<SelfBoundingParams> claim = std::nullopt);

// ---------------------------------------------------------------------------
// Monte Carlo tails and cumulants
// ---------------------------------------------------------------------------

/// Z = f(X) for samples 0..count-1, sample j drawn from stream (seed, j).
std::vector<double> sample_values(const SelfBoundingInstance& inst, std::size_t count,
                                  std::uint64_t seed, const ExecPolicy& policy = {});

enum class TailCenter { exact_mean, sample_mean };

inline constexpr double kTailConfidence = 1e-3;
inline constexpr std::size_t kMinTailSamples = 10000;

struct EmpiricalTailCurve {
  std::vector<double> t_grid;
  std::vector<double> upper_probs;      // P(Z - c >= t)
  std::vector<double> lower_probs;      // P(Z - c <= -t)
  std::vector<double> upper_ci_radius;  // p_hat - one-sided Clopper-Pearson lower limit
  std::vector<double> lower_ci_radius;
  double mean_estimate = 0.0;
  double center = 0.0;  // c: exact mean or mean_estimate
  TailCenter center_kind = TailCenter::exact_mean;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double confidence = kTailConfidence;

  friend bool operator==(const EmpiricalTailCurve&, const EmpiricalTailCurve&) = default;
};

/// Throws DomainError for samples < 1e4 or a t_grid that is empty, negative
/// or not ascending.
EmpiricalTailCurve estimate_tails(const SelfBoundingInstance& inst, std::span<const double> t_grid,
                                  std::size_t samples, std::uint64_t seed,
                                  const ExecPolicy& policy = {},
                                  TailCenter center = TailCenter::exact_mean);

/// One-sided exact binomial (Clopper-Pearson) lower limit on p at level
/// `alpha` after k successes in n trials.
double clopper_pearson_lower(std::size_t n, std::size_t k, double alpha);

struct CumulantEstimate {
  std::vector<double> lambda_grid;
  std::vector<double> g_values;        // log mean exp(lambda (Z - Z_bar))
  std::vector<double> g_prime_values;  // mean((Z - Z_bar) e^{..}) / mean(e^{..})
  std::vector<double> g_stderr;
  std::vector<double> g_prime_stderr;
  double mean_estimate = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Throws DomainError when |lambda| M n > 700 for some grid point.
CumulantEstimate estimate_cumulant(const SelfBoundingInstance& inst,
                                   std::span<const double> lambda_grid, std::size_t samples,
                                   std::uint64_t seed, const ExecPolicy& policy = {});

// ---------------------------------------------------------------------------
// Harris's inequality
// ---------------------------------------------------------------------------

using RealFunction = std::function<double(std::span<const double>)>;

struct CovarianceEstimate {
  double covariance = 0.0;  // mean(f g) - mean(f) mean(g)
  double std_error = 0.0;
};

/// Plug-in covariance of f(U) and g(U), U uniform on [0,1]^n.
CovarianceEstimate harris_covariance(const RealFunction& f, const RealFunction& g, std::size_t n,
                                     std::size_t samples, std::uint64_t seed,
                                     const ExecPolicy& policy = {});

/// Coordinatewise nondecreasing piecewise-linear function on [0,1]^n:
/// sum_i w_i h_i(x_i) + c_max max_i h_i(x_i) + c_min min_i h_i(x_i), each h_i
/// piecewise linear through sorted random knots.
struct MonotonePiecewiseLinear {
  std::vector<std::vector<double>> knots_x;
  std::vector<std::vector<double>> knots_y;
  std::vector<double> weights;
  double c_max = 0.0;
  double c_min = 0.0;

  static MonotonePiecewiseLinear random(std::size_t n, CounterRng& rng, std::size_t knots = 4);
  double operator()(std::span<const double> x) const;
};

struct HarrisTrial {
  bool reversed = false;  // f nonincreasing, g nondecreasing
  double covariance = 0.0;
  double std_error = 0.0;
  double margin = 0.0;  // signed distance to the violation threshold; >= 0 passes
  bool pass = false;
};

struct HarrisReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double z = 0.0;
  std::vector<HarrisTrial> trials;
  bool pass = false;
};

/// z-score of a one-sided 1e-3 normal tail, the tolerance used by harris_check.
inline constexpr double kHarrisZ = 3.090232306167813;

/// For `pairs` random pairs of nondecreasing functions checks
/// Cov(f, g) >= -z se, then flips f to nonincreasing and checks Cov <= z se.
HarrisReport harris_check(std::size_t n, std::size_t samples, std::uint64_t seed,
                          std::size_t pairs = 8, const ExecPolicy& policy = {});

}  // namespace sbconc
