#pragma once

#include <optional>
#include <string>

#include "sbconc/bounds.hpp"

namespace sbconc {

/// Which of the two routes gives the smaller tail bound.
enum class Tighter { direct, rescaled, tie };

std::string_view to_string(Tighter t);

/// Direct (M,a,b) bound on f versus the classical (a,b) bound applied to
/// g = f / M, both at deviation t of g (deviation M t of f).
///
/// The denominators drop the term 2 a E[Z] / M common to both routes:
///   upper: rescaled = 2 M b + 2 c_+ t,   direct = 2 b / M + delta_+ t
///   lower: rescaled = 2 M b + 2 t / 3,   direct = 2 b / M + delta_- t
/// The exponents are the complete ones.
struct ScalingComparison {
  Tail tail = Tail::upper;
  double t = 0.0;
  double rescaled_denominator = 0.0;
  double direct_denominator = 0.0;
  double rescaled_exponent = 0.0;
  double direct_exponent = 0.0;
  Tighter tighter = Tighter::tie;
  /// Positive t at which the two denominators coincide, when the t
  /// coefficients differ and the solution is positive.
  std::optional<double> crossover_t;
  /// (2 b / 3)(M - 1/M), the closed-form threshold quoted for the upper tail
  /// when delta_+ = a and 2 c_+ = a - 1/3. Reported for reference only.
  std::optional<double> quoted_threshold_t;
  /// Lower tail only: t <= E[Z] / M (deviation of f within E[Z]).
  bool in_window = true;
  std::string regime_note;
};

/// g = f / M is (a, M b) self-bounding with mean E[Z] / M.
SelfBoundingParams rescale_params(const SelfBoundingParams& p);

/// Relative tolerance under which two denominators count as a tie.
inline constexpr double kTieTolerance = 1e-12;

ScalingComparison compare_upper(const SelfBoundingParams& p, double t);
ScalingComparison compare_lower(const SelfBoundingParams& p, double t);

}  // namespace sbconc
