#include "sbconc/instance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <set>

#include "sbconc/errors.hpp"

namespace sbconc {

namespace {

// Fixed-capacity bitmap on the stack for alphabets/ground sets up to 4096;
// evaluators run inside the sampling kernels and must not allocate.
class SmallBitmap {
 public:
  explicit SmallBitmap(std::size_t bits) : words_((bits + 63) / 64) {
    if (words_ > kMaxWords) {
      heap_.assign(words_, 0);
    } else {
      std::memset(stack_.data(), 0, words_ * sizeof(std::uint64_t));
    }
  }

  // Returns true when the bit was newly set.
  bool set(std::size_t k) {
    std::uint64_t* w = data() + (k >> 6);
    const std::uint64_t mask = std::uint64_t{1} << (k & 63);
    const bool fresh = (*w & mask) == 0;
    *w |= mask;
    return fresh;
  }

 private:
  static constexpr std::size_t kMaxWords = 64;
  std::uint64_t* data() { return heap_.empty() ? stack_.data() : heap_.data(); }

  std::size_t words_;
  std::array<std::uint64_t, kMaxWords> stack_;
  std::vector<std::uint64_t> heap_;
};

std::size_t arg_size(const GeneratorSpec& spec, const char* key) {
  const auto it = spec.args.find(key);
  if (it == spec.args.end()) throw InvalidParams(std::string("generator spec missing '") + key + "'");
  return static_cast<std::size_t>(it->second);
}

double arg_double(const GeneratorSpec& spec, const char* key) {
  const auto it = spec.args.find(key);
  if (it == spec.args.end()) throw InvalidParams(std::string("generator spec missing '") + key + "'");
  return it->second;
}

}  // namespace

int CoordinateDomain::sample(CounterRng& rng) const {
  if (cdf.empty()) return static_cast<int>(rng.below(size));
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::size_t>(it - cdf.begin(), size - 1));
}

void SelfBoundingInstance::sample(CounterRng& rng, std::span<int> x) const {
  for (std::size_t i = 0; i < n; ++i) x[i] = domains[i].sample(rng);
}

SelfBoundingInstance make_distinct_values(std::size_t n, std::size_t alphabet, double M) {
  if (n < 1) throw InvalidParams("distinct-values: n must be >= 1");
  if (alphabet < 2) throw InvalidParams("distinct-values: alphabet must be >= 2");
  if (!(M > 0.0)) throw InvalidParams("distinct-values: M must be > 0");

  SelfBoundingInstance inst;
  inst.name = "distinct-values";
  inst.n = n;
  const double k = static_cast<double>(alphabet);
  const double mean =
      M * k * -std::expm1(static_cast<double>(n) * std::log1p(-1.0 / k));
  inst.claimed_params = SelfBoundingParams{M, 1.0, 0.0, mean};
  inst.domains.assign(n, CoordinateDomain{alphabet, {}});
  inst.evaluator = [alphabet, M](std::span<const int> x) {
    SmallBitmap seen(alphabet);
    std::size_t distinct = 0;
    for (int v : x) distinct += seen.set(static_cast<std::size_t>(v)) ? 1 : 0;
    return M * static_cast<double>(distinct);
  };
  inst.spec = GeneratorSpec{"distinct-values",
                            {{"n", static_cast<double>(n)},
                             {"alphabet", static_cast<double>(alphabet)},
                             {"M", M}},
                            {},
                            0};
  return inst;
}

SelfBoundingInstance make_scaled_coverage(const std::vector<std::vector<int>>& sets,
                                          std::size_t ground_size, double scale,
                                          double p_include, std::optional<double> claimed_M) {
  if (sets.empty()) throw InvalidParams("coverage: need at least one set");
  if (!(scale > 0.0)) throw InvalidParams("coverage: scale must be > 0");
  if (!(p_include > 0.0 && p_include < 1.0)) {
    throw InvalidParams("coverage: p_include must lie in (0, 1)");
  }

  std::vector<int> multiplicity(ground_size, 0);
  std::size_t largest = 0;
  std::vector<std::vector<int>> cleaned;
  cleaned.reserve(sets.size());
  for (const auto& s : sets) {
    std::set<int> uniq;
    for (int e : s) {
      if (e < 0 || static_cast<std::size_t>(e) >= ground_size) {
        throw InvalidParams("coverage: element outside the ground set");
      }
      uniq.insert(e);
    }
    for (int e : uniq) ++multiplicity[static_cast<std::size_t>(e)];
    // Dropping coordinate i removes at most the elements of set i, and
    // exactly those when every other set is inactive.
    largest = std::max(largest, uniq.size());
    cleaned.emplace_back(uniq.begin(), uniq.end());
  }
  if (std::any_of(multiplicity.begin(), multiplicity.end(), [](int m) { return m == 0; })) {
    throw InvalidParams("coverage: every ground element must lie in some set");
  }

  const double cap = scale * static_cast<double>(largest);
  if (claimed_M && *claimed_M < cap * (1.0 - 1e-12)) {
    throw InvalidParams("coverage: claimed M " + std::to_string(*claimed_M) +
                        " is below the per-coordinate difference cap " + std::to_string(cap));
  }

  double mean = 0.0;
  for (int m : multiplicity) mean += -std::expm1(m * std::log1p(-p_include));
  mean *= scale;

  SelfBoundingInstance inst;
  inst.name = "coverage";
  inst.n = cleaned.size();
  inst.claimed_params = SelfBoundingParams{claimed_M.value_or(cap), 1.0, 0.0, mean};
  inst.domains.assign(inst.n, CoordinateDomain{2, {1.0 - p_include, 1.0}});
  inst.evaluator = [cleaned, ground_size, scale](std::span<const int> x) {
    SmallBitmap covered(ground_size);
    std::size_t count = 0;
    for (std::size_t i = 0; i < cleaned.size(); ++i) {
      if (x[i] == 0) continue;
      for (int e : cleaned[i]) count += covered.set(static_cast<std::size_t>(e)) ? 1 : 0;
    }
    return scale * static_cast<double>(count);
  };
  GeneratorSpec spec{"coverage", {{"scale", scale}, {"p_include", p_include}}, cleaned, ground_size};
  if (claimed_M) spec.args["claimed_M"] = *claimed_M;
  inst.spec = std::move(spec);
  return inst;
}

SelfBoundingInstance make_constant(std::size_t n, std::size_t alphabet, double value,
                                   const SelfBoundingParams& claimed) {
  if (n < 1 || alphabet < 1) throw InvalidParams("constant: need n >= 1 and alphabet >= 1");
  SelfBoundingInstance inst;
  inst.name = "constant";
  inst.n = n;
  inst.claimed_params = claimed;
  inst.claimed_params.mean_z = value;
  inst.domains.assign(n, CoordinateDomain{alphabet, {}});
  inst.evaluator = [value](std::span<const int>) { return value; };
  inst.spec = GeneratorSpec{"constant",
                            {{"n", static_cast<double>(n)},
                             {"alphabet", static_cast<double>(alphabet)},
                             {"value", value},
                             {"M", claimed.M},
                             {"a", claimed.a},
                             {"b", claimed.b}},
                            {},
                            0};
  return inst;
}

std::vector<std::string> registered_instances() {
  return {"distinct-values", "coverage-singletons", "coverage-pairs"};
}

SelfBoundingInstance make_registered_instance(const std::string& name, const InstanceArgs& args) {
  if (name == "distinct-values") {
    return make_distinct_values(args.n, args.alphabet, args.M);
  }
  if (name == "coverage-singletons") {
    std::vector<std::vector<int>> sets(args.n);
    for (std::size_t i = 0; i < args.n; ++i) sets[i] = {static_cast<int>(i)};
    auto inst = make_scaled_coverage(sets, args.n, args.M, args.p_include);
    inst.name = name;
    return inst;
  }
  if (name == "coverage-pairs") {
    std::vector<std::vector<int>> sets(args.n);
    for (std::size_t i = 0; i < args.n; ++i) {
      sets[i] = {static_cast<int>(i), static_cast<int>(i + 1)};
    }
    // Each set has two elements, so scale M/2 gives a difference cap of M.
    auto inst = make_scaled_coverage(sets, args.n + 1, args.M / 2.0, args.p_include);
    inst.name = name;
    return inst;
  }
  throw InvalidParams("unknown instance '" + name + "'");
}

SelfBoundingInstance instance_from_spec(const GeneratorSpec& spec) {
  if (spec.kind == "distinct-values") {
    return make_distinct_values(arg_size(spec, "n"), arg_size(spec, "alphabet"),
                                arg_double(spec, "M"));
  }
  if (spec.kind == "coverage") {
    std::optional<double> claimed;
    if (auto it = spec.args.find("claimed_M"); it != spec.args.end()) claimed = it->second;
    return make_scaled_coverage(spec.sets, spec.ground_size, arg_double(spec, "scale"),
                                arg_double(spec, "p_include"), claimed);
  }
  if (spec.kind == "constant") {
    SelfBoundingParams claimed{arg_double(spec, "M"), arg_double(spec, "a"), arg_double(spec, "b"),
                               0.0};
    return make_constant(arg_size(spec, "n"), arg_size(spec, "alphabet"),
                         arg_double(spec, "value"), claimed);
  }
  throw InvalidParams("unknown generator kind '" + spec.kind + "'");
}

}  // namespace sbconc
