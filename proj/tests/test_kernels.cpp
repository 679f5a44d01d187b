#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbconc/conditions.hpp"
#include "sbconc/harness.hpp"
#include "sbconc/kernels.hpp"

using namespace sbconc;

TEST_CASE("fill_indexed: OpenMP matches the serial loop") {
  auto fn = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)) * 1e3; };
  std::vector<double> ref(10007);
  kernels::fill_indexed_serial(std::span<double>(ref), fn);
  for (int threads : {1, 2, 4, 7}) {
    std::vector<double> got(ref.size());
    kernels::fill_indexed_omp(std::span<double>(got), fn, threads);
    CHECK(got == ref);
  }
  std::vector<double> empty;
  kernels::fill_indexed_omp(std::span<double>(empty), fn, 4);
}

TEST_CASE("first_failure: OpenMP finds the same index") {
  for (std::size_t bad : {std::size_t{0}, std::size_t{1}, std::size_t{517}, std::size_t{9998},
                          kernels::kNone}) {
    auto holds = [bad](std::size_t i) { return i < bad; };
    const auto ref = kernels::first_failure_serial(0, 9999, holds);
    CHECK(ref == (bad < 9999 ? bad : kernels::kNone));
    for (int threads : {1, 2, 4, 7}) {
      CHECK(kernels::first_failure_omp(0, 9999, holds, threads) == ref);
    }
  }
  // Several failures: the smallest wins regardless of which thread sees it.
  auto sparse = [](std::size_t i) { return i % 1000 != 999 || i < 3000; };
  for (int threads : {2, 4, 7}) {
    CHECK(kernels::first_failure_omp(0, 10000, sparse, threads) == 3999);
  }
  CHECK(kernels::first_failure_omp(5, 5, sparse, 3) == kernels::kNone);
}

TEST_CASE("condition scan is identical serial and parallel") {
  const GammaFamily f{1, 1.9, 2.0 / 3};
  const auto ref = check_condition1(f, 10.0, 20000, ExecPolicy::serial());
  for (int threads : {1, 2, 4, 7}) {
    const auto got = check_condition1(f, 10.0, 20000, ExecPolicy::omp(threads));
    CHECK(got.hi == ref.hi);
    CHECK(got.empty == ref.empty);
  }
}

TEST_CASE("definition check is identical serial and parallel") {
  const auto inst = make_distinct_values(12, 5, 1.0);
  SelfBoundingParams claim = inst.claimed_params;
  claim.M = 0.5;
  const auto ref = check_self_bounding(inst, 3000, 9, ExecPolicy::serial(), claim);
  for (int threads : {2, 7}) {
    const auto got = check_self_bounding(inst, 3000, 9, ExecPolicy::omp(threads), claim);
    CHECK(got.violation_count == ref.violation_count);
    CHECK(got.max_slack == ref.max_slack);
    REQUIRE(got.witnesses.size() == ref.witnesses.size());
    for (std::size_t k = 0; k < ref.witnesses.size(); ++k) {
      CHECK(got.witnesses[k].sample == ref.witnesses[k].sample);
      CHECK(got.witnesses[k].x == ref.witnesses[k].x);
    }
  }
}

TEST_CASE("sample streams do not depend on partitioning") {
  const auto inst = make_registered_instance("coverage-pairs", {20, 2, 1.0, 0.3});
  const auto ref = sample_values(inst, 5000, 77, ExecPolicy::serial());
  for (int threads : {1, 2, 4, 7}) CHECK(sample_values(inst, 5000, 77, ExecPolicy::omp(threads)) == ref);
}
