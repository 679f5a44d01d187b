#pragma once

// Data-parallel loops used by the grid scans and the Monte Carlo harness.
//
// Every kernel exists twice: a plain serial loop kept as the reference, and
// an OpenMP version. Both write results by index and never reduce in
// thread order, so their outputs are bit-identical for any thread count.

#include <cstddef>
#include <limits>
#include <span>

#include <omp.h>

namespace sbconc {

struct ExecPolicy {
  bool parallel = true;
  int threads = 0;  // 0: OpenMP default

  static ExecPolicy serial() { return {false, 1}; }
  static ExecPolicy omp(int threads = 0) { return {true, threads}; }
};

namespace kernels {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

inline int resolve_threads(const ExecPolicy& policy) {
  return policy.threads > 0 ? policy.threads : omp_get_max_threads();
}

/// out[i] = fn(i) for i in [0, out.size()).
template <class T, class Fn>
void fill_indexed_serial(std::span<T> out, Fn&& fn) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(i);
}

template <class T, class Fn>
void fill_indexed_omp(std::span<T> out, Fn&& fn, int threads) {
  const auto n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
}

template <class T, class Fn>
void fill_indexed(std::span<T> out, Fn&& fn, const ExecPolicy& policy) {
  if (policy.parallel) {
    fill_indexed_omp(out, fn, resolve_threads(policy));
  } else {
    fill_indexed_serial(out, fn);
  }
}

/// Smallest i in [first, last) with !holds(i), or kNone.
template <class Pred>
std::size_t first_failure_serial(std::size_t first, std::size_t last, Pred&& holds) {
  for (std::size_t i = first; i < last; ++i) {
    if (!holds(i)) return i;
  }
  return kNone;
}

template <class Pred>
std::size_t first_failure_omp(std::size_t first, std::size_t last, Pred&& holds, int threads) {
  std::size_t found = kNone;
  const auto lo = static_cast<long long>(first);
  const auto hi = static_cast<long long>(last);
#pragma omp parallel for schedule(static) reduction(min : found) num_threads(threads)
  for (long long i = lo; i < hi; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx < found && !holds(idx)) found = idx;
  }
  return found;
}

template <class Pred>
std::size_t first_failure(std::size_t first, std::size_t last, Pred&& holds,
                          const ExecPolicy& policy) {
  if (policy.parallel) return first_failure_omp(first, last, holds, resolve_threads(policy));
  return first_failure_serial(first, last, holds);
}

}  // namespace kernels
}  // namespace sbconc
