#include "sbconc/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "sbconc/errors.hpp"

namespace sbconc {

namespace {

Tighter classify(double rescaled, double direct) {
  const double scale = std::max({std::fabs(rescaled), std::fabs(direct), 1e-300});
  if (std::fabs(rescaled - direct) <= kTieTolerance * scale) return Tighter::tie;
  return direct < rescaled ? Tighter::direct : Tighter::rescaled;
}

// Solves intercept_r + slope_r t = intercept_d + slope_d t for t > 0.
std::optional<double> crossover(double intercept_r, double slope_r, double intercept_d,
                                double slope_d) {
  const double dslope = slope_d - slope_r;
  const double scale = std::max({std::fabs(slope_r), std::fabs(slope_d), 1e-300});
  if (std::fabs(dslope) <= kTieTolerance * scale) return std::nullopt;
  const double t = (intercept_r - intercept_d) / dslope;
  if (!(t > 0.0) || !std::isfinite(t)) return std::nullopt;
  return t;
}

void require_t(double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("scaling: t must be finite and >= 0");
}

std::string regime_note(double M) {
  if (M > 1.0) return "";
  return M == 1.0 ? "M = 1: both routes coincide up to delta_+ versus 2 c_+"
                  : "M < 1: outside the M > 1 comparison regime";
}

}  // namespace

std::string_view to_string(Tighter t) {
  switch (t) {
    case Tighter::direct: return "direct";
    case Tighter::rescaled: return "rescaled";
    case Tighter::tie: return "tie";
  }
  return "unknown";
}

SelfBoundingParams rescale_params(const SelfBoundingParams& p) {
  p.validate();
  return SelfBoundingParams{1.0, p.a, p.M * p.b, p.mean_z / p.M};
}

ScalingComparison compare_upper(const SelfBoundingParams& p, double t) {
  p.validate();
  require_t(t);
  const double M = p.M;
  const double two_c = 2.0 * c_plus(p.a);
  const double delta = delta_plus(p.a, M).value;

  ScalingComparison out;
  out.tail = Tail::upper;
  out.t = t;
  out.rescaled_denominator = 2.0 * M * p.b + two_c * t;
  out.direct_denominator = 2.0 * p.b / M + delta * t;

  const double common = 2.0 * p.a * p.mean_z / M;
  const auto exponent = [t](double den) { return den > 0.0 ? -(t * t) / den : 0.0; };
  out.rescaled_exponent = exponent(common + out.rescaled_denominator);
  out.direct_exponent = exponent(common + out.direct_denominator);
  out.tighter = classify(out.rescaled_denominator, out.direct_denominator);
  out.crossover_t = crossover(2.0 * M * p.b, two_c, 2.0 * p.b / M, delta);
  out.quoted_threshold_t = (2.0 * p.b / 3.0) * (M - 1.0 / M);
  out.regime_note = regime_note(M);
  return out;
}

ScalingComparison compare_lower(const SelfBoundingParams& p, double t) {
  p.validate();
  require_t(t);
  const double M = p.M;
  const double delta = delta_minus(p.a, M).value;

  ScalingComparison out;
  out.tail = Tail::lower;
  out.t = t;
  out.rescaled_denominator = 2.0 * M * p.b + 2.0 * t / 3.0;
  out.direct_denominator = 2.0 * p.b / M + delta * t;

  const double common = 2.0 * p.a * p.mean_z / M;
  const auto exponent = [t](double den) { return den > 0.0 ? -(t * t) / den : 0.0; };
  out.rescaled_exponent = exponent(common + out.rescaled_denominator);
  out.direct_exponent = exponent(common + out.direct_denominator);
  out.tighter = classify(out.rescaled_denominator, out.direct_denominator);
  out.crossover_t = crossover(2.0 * M * p.b, 2.0 / 3.0, 2.0 * p.b / M, delta);
  out.in_window = M * t <= p.mean_z;
  out.regime_note = regime_note(M);
  return out;
}

}  // namespace sbconc
