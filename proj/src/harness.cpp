#include "sbconc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/distributions/binomial.hpp>

#include "sbconc/errors.hpp"

namespace sbconc {

namespace {

// Neumaier summation, always applied in index order so results are
// independent of how the values were produced.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class Fn>
double mean_of(std::size_t n, Fn&& fn) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s.add(fn(i));
  return s.value() / static_cast<double>(n);
}

struct SampleCheck {
  double max_d = -std::numeric_limits<double>::infinity();
  double min_d = std::numeric_limits<double>::infinity();
  double slack = -std::numeric_limits<double>::infinity();
  std::vector<Violation> violations;
};

SampleCheck check_one(const SelfBoundingInstance& inst, const SelfBoundingParams& claim,
                      std::size_t sample, std::uint64_t seed) {
  CounterRng rng(seed, sample);
  std::vector<int> x(inst.n);
  inst.sample(rng, x);
  const double f = inst.evaluate(x);
  const double tol = 1e-9 * std::max({1.0, std::fabs(f), claim.M});

  SampleCheck out;
  auto record = [&](std::optional<std::size_t> coord, ViolationKind kind, double observed,
                    double limit) {
    out.violations.push_back(Violation{sample, coord, kind, observed, limit, x});
  };

  if (f < -tol) record(std::nullopt, ViolationKind::negative_value, f, 0.0);

  CompensatedSum total;
  for (std::size_t i = 0; i < inst.n; ++i) {
    double fi;
    if (inst.infimum) {
      fi = inst.infimum(x, i);
    } else {
      if (inst.domains[i].size == 0) {
        throw DomainError("check_self_bounding: coordinate " + std::to_string(i) +
                          " is not enumerable and no infimum oracle was supplied");
      }
      const int original = x[i];
      fi = std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < inst.domains[i].size; ++v) {
        x[i] = static_cast<int>(v);
        fi = std::min(fi, inst.evaluate(x));
      }
      x[i] = original;
    }
    const double d = f - fi;
    out.max_d = std::max(out.max_d, d);
    out.min_d = std::min(out.min_d, d);
    total.add(d);
    if (d < -tol) record(i, ViolationKind::negative_difference, d, 0.0);
    if (d > claim.M + tol) record(i, ViolationKind::difference_above_m, d, claim.M);
  }
  const double bound = claim.a * f + claim.b;
  out.slack = total.value() - bound;
  if (out.slack > tol) record(std::nullopt, ViolationKind::sum_above_bound, total.value(), bound);
  return out;
}

void validate_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + ": grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError(std::string(what) + ": grid must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(what) + ": grid must be strictly ascending");
    }
  }
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const auto k = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
  return ys[k - 1] + w * (ys[k] - ys[k - 1]);
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::negative_value: return "negative-value";
    case ViolationKind::negative_difference: return "negative-difference";
    case ViolationKind::difference_above_m: return "difference-above-M";
    case ViolationKind::sum_above_bound: return "sum-above-bound";
  }
  return "unknown";
}

SelfBoundingReport check_self_bounding(const SelfBoundingInstance& inst, std::size_t samples,
                                       std::uint64_t seed, const ExecPolicy& policy,
                                       std::optional<SelfBoundingParams> claim) {
  if (!inst.infimum) {
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (inst.domains[i].size == 0) {
        throw DomainError("check_self_bounding: coordinate " + std::to_string(i) +
                          " is not enumerable and no infimum oracle was supplied");
      }
    }
  }
  const SelfBoundingParams checked = claim.value_or(inst.claimed_params);
  std::vector<SampleCheck> per_sample(samples);
  kernels::fill_indexed(
      std::span<SampleCheck>(per_sample),
      [&](std::size_t j) { return check_one(inst, checked, j, seed); }, policy);

  SelfBoundingReport report;
  report.samples = samples;
  report.seed = seed;
  report.checked = checked;
  report.max_difference = -std::numeric_limits<double>::infinity();
  report.min_difference = std::numeric_limits<double>::infinity();
  report.max_slack = -std::numeric_limits<double>::infinity();
  for (auto& s : per_sample) {
    report.max_difference = std::max(report.max_difference, s.max_d);
    report.min_difference = std::min(report.min_difference, s.min_d);
    report.max_slack = std::max(report.max_slack, s.slack);
    report.violation_count += s.violations.size();
    for (auto& v : s.violations) {
      if (report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(std::move(v));
    }
  }
  if (samples == 0 || inst.n == 0) {
    report.max_difference = report.min_difference = 0.0;
    if (samples == 0) report.max_slack = 0.0;
  }
  return report;
}

std::vector<double> sample_values(const SelfBoundingInstance& inst, std::size_t count,
                                  std::uint64_t seed, const ExecPolicy& policy) {
  std::vector<double> z(count);
  kernels::fill_indexed(
      std::span<double>(z),
      [&](std::size_t j) {
        CounterRng rng(seed, j);
        std::vector<int> x(inst.n);
        inst.sample(rng, x);
        return inst.evaluate(x);
      },
      policy);
  return z;
}

double clopper_pearson_lower(std::size_t n, std::size_t k, double alpha) {
  if (k == 0) return 0.0;
  using boost::math::binomial_distribution;
  return binomial_distribution<>::find_lower_bound_on_p(static_cast<double>(n),
                                                        static_cast<double>(k), alpha);
}

EmpiricalTailCurve estimate_tails(const SelfBoundingInstance& inst, std::span<const double> t_grid,
                                  std::size_t samples, std::uint64_t seed,
                                  const ExecPolicy& policy, TailCenter center) {
  if (samples < kMinTailSamples) {
    throw DomainError("estimate_tails: need at least 10^4 samples");
  }
  validate_grid(t_grid, "estimate_tails");
  if (t_grid.front() < 0.0) throw DomainError("estimate_tails: t must be >= 0");

  auto z = sample_values(inst, samples, seed, policy);

  EmpiricalTailCurve curve;
  curve.t_grid.assign(t_grid.begin(), t_grid.end());
  curve.samples = samples;
  curve.seed = seed;
  curve.center_kind = center;
  curve.mean_estimate = mean_of(samples, [&](std::size_t j) { return z[j]; });
  curve.center =
      center == TailCenter::exact_mean ? inst.claimed_params.mean_z : curve.mean_estimate;

  std::sort(z.begin(), z.end());
  const double c = curve.center;
  const double n = static_cast<double>(samples);
  for (double t : t_grid) {
    // z - c >= t is monotone in z, so both counts are partition points.
    const auto first_upper =
        std::partition_point(z.begin(), z.end(), [&](double v) { return v - c < t; });
    const auto past_lower =
        std::partition_point(z.begin(), z.end(), [&](double v) { return v - c <= -t; });
    const auto k_upper = static_cast<std::size_t>(z.end() - first_upper);
    const auto k_lower = static_cast<std::size_t>(past_lower - z.begin());
    const double p_upper = static_cast<double>(k_upper) / n;
    const double p_lower = static_cast<double>(k_lower) / n;
    curve.upper_probs.push_back(p_upper);
    curve.lower_probs.push_back(p_lower);
    curve.upper_ci_radius.push_back(p_upper - clopper_pearson_lower(samples, k_upper, curve.confidence));
    curve.lower_ci_radius.push_back(p_lower - clopper_pearson_lower(samples, k_lower, curve.confidence));
  }
  return curve;
}

CumulantEstimate estimate_cumulant(const SelfBoundingInstance& inst,
                                   std::span<const double> lambda_grid, std::size_t samples,
                                   std::uint64_t seed, const ExecPolicy& policy) {
  if (samples < 2) throw DomainError("estimate_cumulant: need at least 2 samples");
  const double spread = inst.claimed_params.M * static_cast<double>(inst.n);
  for (double l : lambda_grid) {
    if (!std::isfinite(l) || std::fabs(l) * spread > 700.0) {
      throw DomainError("estimate_cumulant: |lambda| M n exceeds 700, exp would overflow");
    }
  }

  const auto z = sample_values(inst, samples, seed, policy);
  CumulantEstimate est;
  est.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  est.samples = samples;
  est.seed = seed;
  est.mean_estimate = mean_of(samples, [&](std::size_t j) { return z[j]; });

  const double n = static_cast<double>(samples);
  std::vector<double> w(samples);
  for (double l : lambda_grid) {
    for (std::size_t j = 0; j < samples; ++j) w[j] = std::exp(l * (z[j] - est.mean_estimate));
    const double m = mean_of(samples, [&](std::size_t j) { return w[j]; });
    const double num = mean_of(samples, [&](std::size_t j) { return (z[j] - est.mean_estimate) * w[j]; });
    const double gp = num / m;
    const double var_w = mean_of(samples, [&](std::size_t j) { return (w[j] - m) * (w[j] - m); });
    // Delta method for the ratio: influence (d - G') w / m.
    const double var_ratio = mean_of(samples, [&](std::size_t j) {
      const double r = (z[j] - est.mean_estimate - gp) * w[j];
      return r * r;
    });
    est.g_values.push_back(std::log(m));
    est.g_prime_values.push_back(gp);
    est.g_stderr.push_back(std::sqrt(var_w / n) / m);
    est.g_prime_stderr.push_back(std::sqrt(var_ratio / n) / m);
  }
  return est;
}

CovarianceEstimate harris_covariance(const RealFunction& f, const RealFunction& g, std::size_t n,
                                     std::size_t samples, std::uint64_t seed,
                                     const ExecPolicy& policy) {
  if (samples < 2) throw DomainError("harris_covariance: need at least 2 samples");
  std::vector<std::pair<double, double>> values(samples);
  kernels::fill_indexed(
      std::span<std::pair<double, double>>(values),
      [&](std::size_t j) {
        CounterRng rng(seed, j);
        std::vector<double> x(n);
        for (auto& xi : x) xi = rng.uniform01();
        return std::pair{f(x), g(x)};
      },
      policy);

  const double mf = mean_of(samples, [&](std::size_t j) { return values[j].first; });
  const double mg = mean_of(samples, [&](std::size_t j) { return values[j].second; });
  const double cov = mean_of(samples, [&](std::size_t j) {
    return (values[j].first - mf) * (values[j].second - mg);
  });
  const double var = mean_of(samples, [&](std::size_t j) {
    const double p = (values[j].first - mf) * (values[j].second - mg) - cov;
    return p * p;
  });
  return {cov, std::sqrt(var / static_cast<double>(samples))};
}

MonotonePiecewiseLinear MonotonePiecewiseLinear::random(std::size_t n, CounterRng& rng,
                                                        std::size_t knots) {
  knots = std::max<std::size_t>(knots, 2);
  MonotonePiecewiseLinear out;
  out.knots_x.resize(n);
  out.knots_y.resize(n);
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& xs = out.knots_x[i];
    auto& ys = out.knots_y[i];
    xs.push_back(0.0);
    for (std::size_t k = 0; k + 2 < knots; ++k) xs.push_back(rng.uniform01());
    xs.push_back(1.0);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t k = 0; k < xs.size(); ++k) ys.push_back(rng.uniform01());
    std::sort(ys.begin(), ys.end());
    out.weights[i] = rng.uniform01();
  }
  out.c_max = rng.uniform01();
  out.c_min = rng.uniform01();
  return out;
}

double MonotonePiecewiseLinear::operator()(std::span<const double> x) const {
  double sum = 0.0;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double h = interpolate(knots_x[i], knots_y[i], x[i]);
    sum += weights[i] * h;
    hi = std::max(hi, h);
    lo = std::min(lo, h);
  }
  if (weights.empty()) return 0.0;
  return sum + c_max * hi + c_min * lo;
}

HarrisReport harris_check(std::size_t n, std::size_t samples, std::uint64_t seed,
                          std::size_t pairs, const ExecPolicy& policy) {
  if (n < 1) throw DomainError("harris_check: n must be >= 1");
  HarrisReport report;
  report.n = n;
  report.samples = samples;
  report.seed = seed;
  report.z = kHarrisZ;
  report.pass = true;
  for (std::size_t k = 0; k < pairs; ++k) {
    // Function shapes come from streams disjoint from the sampling streams.
    CounterRng shape_rng(seed, (std::uint64_t{1} << 63) + k);
    const auto f = MonotonePiecewiseLinear::random(n, shape_rng);
    const auto g = MonotonePiecewiseLinear::random(n, shape_rng);
    const std::uint64_t sample_seed = CounterRng::mix(seed + 2 * k + 1);

    for (bool reversed : {false, true}) {
      RealFunction ff = reversed ? RealFunction([&f](std::span<const double> x) { return -f(x); })
                                 : RealFunction(std::cref(f));
      const auto est = harris_covariance(ff, std::cref(g), n, samples, sample_seed, policy);
      HarrisTrial trial;
      trial.reversed = reversed;
      trial.covariance = est.covariance;
      trial.std_error = est.std_error;
      trial.margin = reversed ? kHarrisZ * est.std_error - est.covariance
                              : est.covariance + kHarrisZ * est.std_error;
      trial.pass = trial.margin >= 0.0;
      report.pass = report.pass && trial.pass;
      report.trials.push_back(trial);
    }
  }
  return report;
}

}  // namespace sbconc
