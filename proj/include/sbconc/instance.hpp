#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbconc/bounds.hpp"
#include "sbconc/rng.hpp"

namespace sbconc {

/// Finite alphabet {0, ..., size - 1} for one coordinate. An empty cdf means
/// the uniform distribution; otherwise cdf[k] = P(X_i <= k).
struct CoordinateDomain {
  std::size_t size = 2;
  std::vector<double> cdf;

  int sample(CounterRng& rng) const;
};

/// Enough to rebuild an instance: generator kind plus its arguments.
struct GeneratorSpec {
  std::string kind;
  std::map<std::string, double> args;
  std::vector<std::vector<int>> sets;  // coverage family, empty otherwise
  std::size_t ground_size = 0;         // coverage ground set size

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// A concrete function of n independent finite-alphabet coordinates together
/// with the (M, a, b) parameters it claims and its exact mean.
struct SelfBoundingInstance {
  std::string name;
  std::size_t n = 0;
  SelfBoundingParams claimed_params;
  std::function<double(std::span<const int>)> evaluator;
  std::vector<CoordinateDomain> domains;
  /// Optional closed-form f_i(x^(i)); x is passed with coordinate i intact.
  std::function<double(std::span<const int>, std::size_t)> infimum;
  GeneratorSpec spec;

  double evaluate(std::span<const int> x) const { return evaluator(x); }
  void sample(CounterRng& rng, std::span<int> x) const;
};

/// f(x) = M * |{distinct symbols in x}|, x_i uniform over `alphabet` symbols.
/// (M, 1, 0) self-bounding with E[Z] = M K (1 - (1 - 1/K)^n).
SelfBoundingInstance make_distinct_values(std::size_t n, std::size_t alphabet, double M);

/// f(x) = scale * |union of the sets i with x_i = 1|, each set active with
/// probability p_include. The difference cap M is computed per coordinate
/// (scale times the largest set); when claimed_M is given and smaller than
/// that cap the family is rejected with InvalidParams.
SelfBoundingInstance make_scaled_coverage(const std::vector<std::vector<int>>& sets,
                                          std::size_t ground_size, double scale,
                                          double p_include,
                                          std::optional<double> claimed_M = std::nullopt);

/// f = value everywhere, claimed (M, a, b) supplied by the caller.
SelfBoundingInstance make_constant(std::size_t n, std::size_t alphabet, double value,
                                   const SelfBoundingParams& claimed);

/// Instances addressable by name from the command line.
struct InstanceArgs {
  std::size_t n = 50;
  std::size_t alphabet = 50;
  double M = 1.0;
  double p_include = 0.5;
};

std::vector<std::string> registered_instances();

/// "distinct-values", "coverage-singletons" (n singleton sets) or
/// "coverage-pairs" (sets {i, i+1} over a ground set of n + 1 elements).
/// Throws InvalidParams for unknown names.
SelfBoundingInstance make_registered_instance(const std::string& name, const InstanceArgs& args);

/// Rebuilds an instance from its GeneratorSpec.
SelfBoundingInstance instance_from_spec(const GeneratorSpec& spec);

}  // namespace sbconc
