#include "sbconc/serialize.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace sbconc {

namespace {

Json numbers(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number_to_json(x));
  return arr;
}

std::vector<double> numbers_from(const Json& arr) {
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& x : arr) out.push_back(number_from_json(x));
  return out;
}

Json optional_number(const std::optional<double>& x) {
  return x ? number_to_json(*x) : Json(nullptr);
}

}  // namespace

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw nlohmann::json::type_error::create(302, "expected a number or non-finite marker", &j);
}

void to_json(Json& j, const SelfBoundingParams& p) {
  j = Json{{"M", number_to_json(p.M)},
           {"a", number_to_json(p.a)},
           {"b", number_to_json(p.b)},
           {"mean_z", number_to_json(p.mean_z)}};
}

void from_json(const Json& j, SelfBoundingParams& p) {
  p.M = number_from_json(j.at("M"));
  p.a = number_from_json(j.at("a"));
  p.b = number_from_json(j.at("b"));
  p.mean_z = number_from_json(j.at("mean_z"));
}

void to_json(Json& j, const TailBound& b) {
  j = Json{{"method", std::string(to_string(b.method))},
           {"tail", std::string(to_string(b.tail))},
           {"exponent", number_to_json(b.exponent)},
           {"probability", number_to_json(b.probability)},
           {"valid", b.valid},
           {"reason", b.reason},
           {"window_max", number_to_json(b.window_max)},
           {"slack_window_max", optional_number(b.slack_window_max)}};
}

void to_json(Json& j, const DeltaValue& d) {
  j = Json{{"side", d.side == DeltaSide::plus ? "plus" : "minus"},
           {"value", number_to_json(d.value)},
           {"case", std::string(to_string(d.case_label))}};
}

void to_json(Json& j, const CumulantBound& c) {
  j = Json{{"lambda", number_to_json(c.lambda)},
           {"value", number_to_json(c.value)},
           {"branch", c.branch == LambdaBranch::positive_lambda ? "positive-lambda"
                                                                : "negative-lambda"}};
}

void to_json(Json& j, const Interval& i) {
  j = Json{{"lo", number_to_json(i.lo)},
           {"hi", number_to_json(i.hi)},
           {"empty", i.empty},
           {"reached_limit", i.reached_limit}};
}

void to_json(Json& j, const ConditionReport& r) {
  j = Json{{"a", number_to_json(r.a)},
           {"M", number_to_json(r.M)},
           {"delta_plus", r.delta},
           {"gamma_improved", number_to_json(r.gamma_improved)},
           {"gamma0_interval", r.gamma0_interval},
           {"condition1_interval", r.condition1_interval},
           {"d_positive_interval", r.d_positive_interval},
           {"lambda_star", optional_number(r.lambda_star)},
           {"lambda_tilde", optional_number(r.lambda_tilde)},
           {"condition1_satisfied", r.condition1_satisfied},
           {"d_positive", r.d_positive},
           {"condition2_satisfied", r.condition2_satisfied},
           {"t_max", number_to_json(r.t_max)},
           {"improved_branch_applicable", r.improved_branch_applicable},
           {"numerical_extension", r.numerical_extension},
           {"remark_regime", r.remark_regime}};
}

void to_json(Json& j, const ScalingComparison& s) {
  j = Json{{"tail", std::string(to_string(s.tail))},
           {"t", number_to_json(s.t)},
           {"rescaled_denominator", number_to_json(s.rescaled_denominator)},
           {"direct_denominator", number_to_json(s.direct_denominator)},
           {"rescaled_exponent", number_to_json(s.rescaled_exponent)},
           {"direct_exponent", number_to_json(s.direct_exponent)},
           {"tighter", std::string(to_string(s.tighter))},
           {"crossover_t", optional_number(s.crossover_t)},
           {"quoted_threshold_t", optional_number(s.quoted_threshold_t)},
           {"in_window", s.in_window},
           {"regime_note", s.regime_note}};
}

void to_json(Json& j, const EmpiricalTailCurve& c) {
  j = Json{{"t_grid", numbers(c.t_grid)},
           {"upper_probs", numbers(c.upper_probs)},
           {"lower_probs", numbers(c.lower_probs)},
           {"upper_ci_radius", numbers(c.upper_ci_radius)},
           {"lower_ci_radius", numbers(c.lower_ci_radius)},
           {"mean_estimate", number_to_json(c.mean_estimate)},
           {"center", number_to_json(c.center)},
           {"center_kind", c.center_kind == TailCenter::exact_mean ? "exact-mean" : "sample-mean"},
           {"samples", c.samples},
           {"seed", c.seed},
           {"confidence", number_to_json(c.confidence)}};
}

void from_json(const Json& j, EmpiricalTailCurve& c) {
  c.t_grid = numbers_from(j.at("t_grid"));
  c.upper_probs = numbers_from(j.at("upper_probs"));
  c.lower_probs = numbers_from(j.at("lower_probs"));
  c.upper_ci_radius = numbers_from(j.at("upper_ci_radius"));
  c.lower_ci_radius = numbers_from(j.at("lower_ci_radius"));
  c.mean_estimate = number_from_json(j.at("mean_estimate"));
  c.center = number_from_json(j.at("center"));
  c.center_kind = j.at("center_kind").get<std::string>() == "sample-mean" ? TailCenter::sample_mean
                                                                          : TailCenter::exact_mean;
  c.samples = j.at("samples").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.confidence = number_from_json(j.at("confidence"));
}

void to_json(Json& j, const CumulantEstimate& c) {
  j = Json{{"lambda_grid", numbers(c.lambda_grid)},
           {"g_values", numbers(c.g_values)},
           {"g_prime_values", numbers(c.g_prime_values)},
           {"g_stderr", numbers(c.g_stderr)},
           {"g_prime_stderr", numbers(c.g_prime_stderr)},
           {"mean_estimate", number_to_json(c.mean_estimate)},
           {"samples", c.samples},
           {"seed", c.seed}};
}

void to_json(Json& j, const Violation& v) {
  j = Json{{"sample", v.sample},
           {"coordinate", v.coordinate ? Json(*v.coordinate) : Json(nullptr)},
           {"kind", std::string(to_string(v.kind))},
           {"observed", number_to_json(v.observed)},
           {"limit", number_to_json(v.limit)},
           {"x", v.x}};
}

void to_json(Json& j, const SelfBoundingReport& r) {
  j = Json{{"samples", r.samples},
           {"seed", r.seed},
           {"checked", r.checked},
           {"violation_count", r.violation_count},
           {"max_difference", number_to_json(r.max_difference)},
           {"min_difference", number_to_json(r.min_difference)},
           {"max_slack", number_to_json(r.max_slack)},
           {"witnesses", r.witnesses}};
}

void to_json(Json& j, const HarrisTrial& t) {
  j = Json{{"reversed", t.reversed},
           {"covariance", number_to_json(t.covariance)},
           {"std_error", number_to_json(t.std_error)},
           {"margin", number_to_json(t.margin)},
           {"pass", t.pass}};
}

void to_json(Json& j, const HarrisReport& r) {
  j = Json{{"n", r.n},          {"samples", r.samples}, {"seed", r.seed},
           {"z", r.z},          {"trials", r.trials},   {"pass", r.pass}};
}

void to_json(Json& j, const GeneratorSpec& s) {
  Json args = Json::object();
  for (const auto& [k, v] : s.args) args[k] = number_to_json(v);
  j = Json{{"kind", s.kind}, {"args", args}, {"sets", s.sets}, {"ground_size", s.ground_size}};
}

void from_json(const Json& j, GeneratorSpec& s) {
  s.kind = j.at("kind").get<std::string>();
  s.args.clear();
  for (const auto& [k, v] : j.at("args").items()) s.args[k] = number_from_json(v);
  s.sets = j.at("sets").get<std::vector<std::vector<int>>>();
  s.ground_size = j.at("ground_size").get<std::size_t>();
}

}  // namespace sbconc
