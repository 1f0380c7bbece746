#pragma once

#include <stdexcept>
#include <string>

namespace cfp {

/// Raised when a computation produces NaN or Inf. The fixed-point engine
/// turns this into a `diverged_nonfinite` verdict instead of propagating it.
class NonFiniteValue : public std::domain_error {
 public:
  NonFiniteValue(const std::string& what, double offending)
      : std::domain_error(what), offending_(offending) {}

  double offending() const noexcept { return offending_; }

 private:
  double offending_;
};

/// Jacobi sweeps exhausted before the off-diagonal mass fell below threshold.
class EigenSolverError : public std::runtime_error {
 public:
  EigenSolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace cfp
