#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sbconc {

/// (M, a, b) together with E[Z]. M caps each coordinate drop f(x) - f_i(x^(i)),
/// a and b bound their sum by a f(x) + b.
struct SelfBoundingParams {
  double M = 1.0;
  double a = 1.0;
  double b = 0.0;
  double mean_z = 0.0;

  /// a E[Z] + b, the variance proxy appearing in every denominator.
  double variance_proxy() const { return a * mean_z + b; }

  /// Throws InvalidParams unless M > 0, a, b, mean_z >= 0 and all finite.
  void validate() const;

  friend bool operator==(const SelfBoundingParams&, const SelfBoundingParams&) = default;
};

enum class Tail { upper, lower };

enum class BoundMethod {
  mcdiarmid_ab,          // (a,b) upper tail, coefficient a on t
  boucheron_ab,          // (a,b) upper tail, coefficient c_+ on t
  mcdiarmid_lower_ab,    // (a,b) lower tail, coefficient 1/3 on t
  mab_symmetric,         // (M,a,b) bound with coefficient a on t, both tails
  mab_improved,          // (M,a,b) bound with delta_+ / delta_- on t
  mab_remark_strengthened,  // delta_+ = a - 1/3 for M <= 1/2, limited t range
  chernoff_exact,        // exp(-sup) of the (M,a,b) cumulant envelope
};

std::string_view to_string(Tail tail);
std::string_view to_string(BoundMethod method);
std::optional<BoundMethod> parse_bound_method(std::string_view name);

/// One evaluated tail bound. `exponent` is kept unclamped so that bounds can
/// be compared even where every probability has saturated at 1.
struct TailBound {
  double exponent = 0.0;
  double probability = 1.0;
  Tail tail = Tail::upper;
  BoundMethod method = BoundMethod::mab_symmetric;
  bool valid = true;
  std::string reason;  // non-empty when !valid
  /// Largest t covered by the producing statement (E[Z] for lower tails,
  /// the threshold for the strengthened remark, +inf otherwise).
  double window_max = 0.0;
  /// Lower tails only: the derivation actually holds up to E[Z] + b/a.
  std::optional<double> slack_window_max;
};

enum class DeltaCase {
  small_a,             // a <= 1/3                      -> 0
  mid_m,               // 1/2 < M <= 1                  -> a - 1/3
  large_m_small_a,     // M > 1 and a < M/(3(M - 1))    -> a - 1/3
  plus_otherwise,      //                               -> a
  at_least_third,      // delta_-: a >= 1/3             -> 0
  minus_otherwise,     // delta_-: a < 1/3              -> a
};

enum class DeltaSide { plus, minus };

std::string_view to_string(DeltaCase c);

struct DeltaValue {
  double value = 0.0;
  DeltaCase case_label = DeltaCase::small_a;
  DeltaSide side = DeltaSide::plus;
};

/// Piecewise t-coefficient of the improved upper bound. Branches are tried in
/// order and the first match wins, so a <= 1/3 always yields 0.
DeltaValue delta_plus(double a, double M);

/// Piecewise t-coefficient of the improved lower bound.
DeltaValue delta_minus(double a, double M);

/// c_+ = max((3a - 1)/6, 0).
double c_plus(double a);

// Classical (a,b) bounds; p.M is ignored.
TailBound upper_tail_mcdiarmid_ab(const SelfBoundingParams& p, double t);
TailBound upper_tail_boucheron_ab(const SelfBoundingParams& p, double t);
TailBound lower_tail_mcdiarmid_ab(const SelfBoundingParams& p, double t);

enum class LambdaBranch { positive_lambda, negative_lambda };

struct CumulantBound {
  double lambda = 0.0;
  double value = 0.0;
  LambdaBranch branch = LambdaBranch::positive_lambda;
};

/// (a E[Z] + b) M lambda^2 / (2 (1 - a M lambda / 2)). Throws DomainError for
/// lambda >= 2/(aM) when a > 0.
CumulantBound cumulant_bound(const SelfBoundingParams& p, double lambda);

TailBound upper_tail_symmetric(const SelfBoundingParams& p, double t);
/// Reports valid = false (no throw) for t > E[Z].
TailBound lower_tail_symmetric(const SelfBoundingParams& p, double t);
TailBound upper_tail_improved(const SelfBoundingParams& p, double t);
TailBound lower_tail_improved(const SelfBoundingParams& p, double t);

/// Largest t for which the strengthened coefficient a - 1/3 is admissible
/// when 0 < M <= 1/2 and a > 1/3. Throws InvalidParams outside that regime.
double remark_threshold(const SelfBoundingParams& p);

/// Upper tail with delta_+ replaced by a - 1/3 for 0 < M <= 1/2, a > 1/3.
/// valid = false, window_max = threshold when t exceeds remark_threshold.
TailBound remark_strengthened_upper(const SelfBoundingParams& p, double t);

struct ChernoffSupremum {
  double value = 0.0;        // sup of the Chernoff objective
  double lambda_star = 0.0;  // its maximiser
};

/// sup over 0 < lambda < 2/(aM) of t lambda - cumulant_bound(lambda).
/// Closed form 4v/(a^2 M) s(a t / (2v)) with v = a E[Z] + b; evaluated in a
/// form that is regular at a = 0, where it equals t^2/(2 v M).
ChernoffSupremum chernoff_supremum_upper(const SelfBoundingParams& p, double t);

/// sup over lambda < 0 of -t lambda - cumulant_bound(lambda), for 0 < t <= E[Z]
/// and a t < v. Throws InvalidParams when a t >= v, DomainError for t > E[Z].
ChernoffSupremum chernoff_supremum_lower(const SelfBoundingParams& p, double t);

/// exp(-sup) packaged as a TailBound. The lower version reports valid = false
/// with the trivial exponent 0 when the supremum is not defined.
TailBound chernoff_upper_tail(const SelfBoundingParams& p, double t);
TailBound chernoff_lower_tail(const SelfBoundingParams& p, double t);

/// t lambda - cumulant_bound(p, lambda) (upper) or -t lambda - ... (lower);
/// the objective whose supremum the two functions above compute.
double chernoff_objective(const SelfBoundingParams& p, Tail tail, double t, double lambda);

}  // namespace sbconc
