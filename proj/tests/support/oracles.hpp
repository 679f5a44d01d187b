#pragma once

// Reference computations used only by the tests. They are written from the
// defining formulas, without the rearrangements used in the library.

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>

namespace sbconc::testing {

/// Root of f on [lo, hi] with f(lo), f(hi) of opposite sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// The cumulant envelope v M l^2 / (2 (1 - a M l / 2)) in long double.
inline long double envelope(long double a, long double b, long double E, long double M,
                            long double l) {
  const long double v = a * E + b;
  return v * M * l * l / (2.0L * (1.0L - a * M * l / 2.0L));
}

struct GridMax {
  double value;
  double arg;
};

/// Largest value of the Chernoff objective over `points` equally spaced
/// lambda values in (0, lmax) (upper tail) or (-lmax, 0) (lower tail).
/// lmax is the smaller of the envelope pole and the point 2t/(vM) beyond
/// which the objective is negative.
inline GridMax chernoff_grid_search(double a, double b, double E, double M, double t, bool upper,
                                    std::size_t points = 1000000) {
  const long double v = static_cast<long double>(a) * E + b;
  long double lmax = 2.0L * t / (v * M);
  if (upper && a > 0) lmax = std::min(lmax, 2.0L / (static_cast<long double>(a) * M));
  GridMax best{-INFINITY, 0.0};
  for (std::size_t i = 1; i < points; ++i) {
    const long double mag = lmax * static_cast<long double>(i) / static_cast<long double>(points);
    const long double l = upper ? mag : -mag;
    const long double obj = (upper ? t * l : -t * l) - envelope(a, b, E, M, l);
    if (obj > best.value) best = {static_cast<double>(obj), static_cast<double>(l)};
  }
  return best;
}

/// psi in long double, straight from the definition.
inline long double psi_ld(long double x) { return std::expm1(x) - x; }

}  // namespace sbconc::testing
