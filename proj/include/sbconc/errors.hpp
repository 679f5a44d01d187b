#pragma once

#include <stdexcept>
#include <string>

namespace sbconc {

// Argument outside the mathematical domain of a function (x <= 0 for alpha,
// x < -1/2 for s, lambda at or past 2/(aM) for the cumulant envelope, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Evaluation hit a pole (G_gamma at 2/(gamma M), rho_gamma where D_gamma = 0).
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

// Parameter tuple cannot produce the requested bound (zero denominators,
// regime preconditions of a bound not met, malformed generator input).
class InvalidParams : public std::invalid_argument {
 public:
  explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sbconc
