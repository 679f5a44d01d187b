#include "sbconc/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "sbconc/errors.hpp"

namespace sbconc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThird = 1.0 / 3.0;

void require_t(double t, const char* where) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError(std::string(where) + ": t must be finite and >= 0, got " +
                      std::to_string(t));
  }
}

TailBound make_bound(double exponent, Tail tail, BoundMethod method, double window_max) {
  TailBound out;
  // -0.0 shows up whenever t = 0; keep the sign out of serialized output.
  out.exponent = exponent == 0.0 ? 0.0 : exponent;
  out.probability = std::min(1.0, std::exp(out.exponent));
  out.tail = tail;
  out.method = method;
  out.window_max = window_max;
  return out;
}

// -(1/M) t^2 / denominator, with the zero-denominator check shared by every bound.
double scaled_exponent(double t, double M, double denominator, const char* where) {
  if (!(denominator > 0.0)) {
    throw InvalidParams(std::string(where) + ": bound denominator is not positive");
  }
  return -(t * t) / (M * denominator);
}

void mark_lower_window(TailBound& bound, const SelfBoundingParams& p, double t) {
  bound.window_max = p.mean_z;
  bound.slack_window_max = p.a > 0.0 ? p.mean_z + p.b / p.a : kInf;
  if (t > p.mean_z) {
    bound.valid = false;
    bound.reason = "t > E[Z]";
  }
}

constexpr std::array<std::pair<BoundMethod, std::string_view>, 7> kMethodNames{{
    {BoundMethod::mcdiarmid_ab, "McDiarmid-ab"},
    {BoundMethod::boucheron_ab, "Boucheron-ab"},
    {BoundMethod::mcdiarmid_lower_ab, "McDiarmid-lower-ab"},
    {BoundMethod::mab_symmetric, "Mab-symmetric"},
    {BoundMethod::mab_improved, "Mab-improved"},
    {BoundMethod::mab_remark_strengthened, "Mab-remark-strengthened"},
    {BoundMethod::chernoff_exact, "Chernoff-exact"},
}};

}  // namespace

void SelfBoundingParams::validate() const {
  if (!std::isfinite(M) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(mean_z)) {
    throw InvalidParams("params must be finite");
  }
  if (!(M > 0.0)) throw InvalidParams("M must be > 0");
  if (a < 0.0) throw InvalidParams("a must be >= 0");
  if (b < 0.0) throw InvalidParams("b must be >= 0");
  if (mean_z < 0.0) throw InvalidParams("E[Z] must be >= 0");
}

std::string_view to_string(Tail tail) { return tail == Tail::upper ? "upper" : "lower"; }

std::string_view to_string(BoundMethod method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

std::optional<BoundMethod> parse_bound_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(DeltaCase c) {
  switch (c) {
    case DeltaCase::small_a: return "a<=1/3";
    case DeltaCase::mid_m: return "1/2<M<=1";
    case DeltaCase::large_m_small_a: return "M>1,a<M/(3(M-1))";
    case DeltaCase::plus_otherwise: return "otherwise";
    case DeltaCase::at_least_third: return "a>=1/3";
    case DeltaCase::minus_otherwise: return "otherwise";
  }
  return "unknown";
}

DeltaValue delta_plus(double a, double M) {
  if (a < 0.0 || !(M > 0.0)) throw DomainError("delta_plus: need a >= 0 and M > 0");
  DeltaValue d;
  d.side = DeltaSide::plus;
  if (a <= kThird) {
    d.value = 0.0;
    d.case_label = DeltaCase::small_a;
  } else if (M > 0.5 && M <= 1.0) {
    d.value = a - kThird;
    d.case_label = DeltaCase::mid_m;
  } else if (M > 1.0 && a < M / (3.0 * (M - 1.0))) {
    d.value = a - kThird;
    d.case_label = DeltaCase::large_m_small_a;
  } else {
    d.value = a;
    d.case_label = DeltaCase::plus_otherwise;
  }
  return d;
}

DeltaValue delta_minus(double a, double M) {
  if (a < 0.0 || !(M > 0.0)) throw DomainError("delta_minus: need a >= 0 and M > 0");
  DeltaValue d;
  d.side = DeltaSide::minus;
  if (a >= kThird) {
    d.value = 0.0;
    d.case_label = DeltaCase::at_least_third;
  } else {
    d.value = a;
    d.case_label = DeltaCase::minus_otherwise;
  }
  return d;
}

double c_plus(double a) { return std::max((3.0 * a - 1.0) / 6.0, 0.0); }

TailBound upper_tail_mcdiarmid_ab(const SelfBoundingParams& p, double t) {
  require_t(t, "upper_tail_mcdiarmid_ab");
  const double den = 2.0 * (p.variance_proxy() + p.a * t);
  return make_bound(scaled_exponent(t, 1.0, den, "upper_tail_mcdiarmid_ab"), Tail::upper,
                    BoundMethod::mcdiarmid_ab, kInf);
}

TailBound upper_tail_boucheron_ab(const SelfBoundingParams& p, double t) {
  require_t(t, "upper_tail_boucheron_ab");
  const double den = 2.0 * (p.variance_proxy() + c_plus(p.a) * t);
  return make_bound(scaled_exponent(t, 1.0, den, "upper_tail_boucheron_ab"), Tail::upper,
                    BoundMethod::boucheron_ab, kInf);
}

TailBound lower_tail_mcdiarmid_ab(const SelfBoundingParams& p, double t) {
  require_t(t, "lower_tail_mcdiarmid_ab");
  const double den = 2.0 * (p.variance_proxy() + t / 3.0);
  return make_bound(scaled_exponent(t, 1.0, den, "lower_tail_mcdiarmid_ab"), Tail::lower,
                    BoundMethod::mcdiarmid_lower_ab, kInf);
}

CumulantBound cumulant_bound(const SelfBoundingParams& p, double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("cumulant_bound: lambda must be finite");
  const double shrink = 1.0 - p.a * p.M * lambda / 2.0;
  if (p.a > 0.0 && !(shrink > 0.0)) {
    throw DomainError("cumulant_bound: lambda must be < 2/(aM)");
  }
  CumulantBound out;
  out.lambda = lambda;
  out.value = p.variance_proxy() * p.M * lambda * lambda / (2.0 * shrink);
  out.branch = lambda < 0.0 ? LambdaBranch::negative_lambda : LambdaBranch::positive_lambda;
  return out;
}

TailBound upper_tail_symmetric(const SelfBoundingParams& p, double t) {
  require_t(t, "upper_tail_symmetric");
  const double den = 2.0 * p.variance_proxy() + p.a * t;
  return make_bound(scaled_exponent(t, p.M, den, "upper_tail_symmetric"), Tail::upper,
                    BoundMethod::mab_symmetric, kInf);
}

TailBound lower_tail_symmetric(const SelfBoundingParams& p, double t) {
  require_t(t, "lower_tail_symmetric");
  const double den = 2.0 * p.variance_proxy() + p.a * t;
  auto out = make_bound(scaled_exponent(t, p.M, den, "lower_tail_symmetric"), Tail::lower,
                        BoundMethod::mab_symmetric, p.mean_z);
  mark_lower_window(out, p, t);
  return out;
}

TailBound upper_tail_improved(const SelfBoundingParams& p, double t) {
  require_t(t, "upper_tail_improved");
  const double den = 2.0 * p.variance_proxy() + delta_plus(p.a, p.M).value * t;
  return make_bound(scaled_exponent(t, p.M, den, "upper_tail_improved"), Tail::upper,
                    BoundMethod::mab_improved, kInf);
}

TailBound lower_tail_improved(const SelfBoundingParams& p, double t) {
  require_t(t, "lower_tail_improved");
  const double den = 2.0 * p.variance_proxy() + delta_minus(p.a, p.M).value * t;
  auto out = make_bound(scaled_exponent(t, p.M, den, "lower_tail_improved"), Tail::lower,
                        BoundMethod::mab_improved, p.mean_z);
  mark_lower_window(out, p, t);
  return out;
}

double remark_threshold(const SelfBoundingParams& p) {
  if (!(p.M > 0.0 && p.M <= 0.5)) {
    throw InvalidParams("remark_strengthened_upper: requires 0 < M <= 1/2");
  }
  if (!(p.a > kThird)) {
    throw InvalidParams("remark_strengthened_upper: requires a > 1/3");
  }
  const double a = p.a;
  const double M = p.M;
  const double g = a - kThird;
  const double surd = std::sqrt(a * a * M * (1.0 - M + 2.0 * M / (3.0 * a) - 1.0 / (3.0 * a)));
  const double ratio = (surd + a * (M - 1.0)) / (M * g - a);
  return p.variance_proxy() / g * (1.0 / (ratio * ratio) - 1.0);
}

TailBound remark_strengthened_upper(const SelfBoundingParams& p, double t) {
  require_t(t, "remark_strengthened_upper");
  const double threshold = remark_threshold(p);
  const double den = 2.0 * p.variance_proxy() + (p.a - kThird) * t;
  auto out = make_bound(scaled_exponent(t, p.M, den, "remark_strengthened_upper"), Tail::upper,
                        BoundMethod::mab_remark_strengthened, threshold);
  if (t > threshold) {
    out.valid = false;
    out.reason = "t > remark threshold " + std::to_string(threshold);
  }
  return out;
}

ChernoffSupremum chernoff_supremum_upper(const SelfBoundingParams& p, double t) {
  require_t(t, "chernoff_supremum_upper");
  const double v = p.variance_proxy();
  if (!(v > 0.0)) throw InvalidParams("chernoff_supremum_upper: a E[Z] + b must be > 0");
  const double x = p.a * t / (2.0 * v);
  const double r = std::sqrt(1.0 + 2.0 * x);
  ChernoffSupremum out;
  // 4v/(a^2 M) s(x) and (2/(aM))(1 - r^{-1}) with the a^2 and (r - 1) cancelled.
  out.value = t * t / (v * p.M * (1.0 + x + r));
  out.lambda_star = 2.0 * t / (p.M * v * (1.0 + r) * r);
  return out;
}

ChernoffSupremum chernoff_supremum_lower(const SelfBoundingParams& p, double t) {
  require_t(t, "chernoff_supremum_lower");
  if (t > p.mean_z) throw DomainError("chernoff_supremum_lower: requires t <= E[Z]");
  const double v = p.variance_proxy();
  if (!(v > 0.0)) throw InvalidParams("chernoff_supremum_lower: a E[Z] + b must be > 0");
  if (!(p.a * t < v)) {
    throw InvalidParams("chernoff_supremum_lower: requires a t < a E[Z] + b");
  }
  const double x = p.a * t / (2.0 * v);
  const double q = std::sqrt(1.0 - 2.0 * x);
  ChernoffSupremum out;
  out.value = t * t / (v * p.M * (1.0 - x + q));
  out.lambda_star = -2.0 * t / (p.M * v * (1.0 + q) * q);
  return out;
}

TailBound chernoff_upper_tail(const SelfBoundingParams& p, double t) {
  const auto sup = chernoff_supremum_upper(p, t);
  return make_bound(-sup.value, Tail::upper, BoundMethod::chernoff_exact, kInf);
}

TailBound chernoff_lower_tail(const SelfBoundingParams& p, double t) {
  require_t(t, "chernoff_lower_tail");
  const double v = p.variance_proxy();
  if (t > p.mean_z || !(p.a * t < v)) {
    auto out = make_bound(0.0, Tail::lower, BoundMethod::chernoff_exact, p.mean_z);
    out.valid = false;
    out.reason = t > p.mean_z ? "t > E[Z]" : "a t >= a E[Z] + b";
    return out;
  }
  const auto sup = chernoff_supremum_lower(p, t);
  auto out = make_bound(-sup.value, Tail::lower, BoundMethod::chernoff_exact, p.mean_z);
  out.slack_window_max = p.a > 0.0 ? p.mean_z + p.b / p.a : kInf;
  return out;
}

double chernoff_objective(const SelfBoundingParams& p, Tail tail, double t, double lambda) {
  const double linear = tail == Tail::upper ? t * lambda : -t * lambda;
  return linear - cumulant_bound(p, lambda).value;
}

}  // namespace sbconc
