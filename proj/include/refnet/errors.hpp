#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace refnet {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Equilibrium iteration failed to reach tolerance. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_u, double last_v,
                   double residual)
      : std::runtime_error(what),
        last_u_(std::move(last_u)),
        last_v_(last_v),
        residual_(residual) {}

  const std::vector<double>& last_u() const noexcept { return last_u_; }
  double last_v() const noexcept { return last_v_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> last_u_;
  double last_v_;
  double residual_;
};

/// A scalar flow-balance equation has no sign change on (eps, 1 - eps).
class BracketingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calibration targets cannot be met by any admissible parameter vector.
class InfeasibleCalibration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace refnet
