#pragma once

#include <stdexcept>
#include <string>

namespace wolfes {

/// Bad argument or configuration value. Maps to CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation on an analytic pole of the interaction (x1 + x2 = 2 x3, X2 = 0).
class SingularConfiguration : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Spherical angles requested at r = 0.
class DegenerateOrigin : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative eigensolver stopped at its cap without meeting the residual target.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Formula-constant resolution found no candidate or more than one.
class ResolutionError : public std::runtime_error {
 public:
  ResolutionError(const std::string& what, std::string table)
      : std::runtime_error(what), table_(std::move(table)) {}
  const std::string& table() const noexcept { return table_; }

 private:
  std::string table_;
};

}  // namespace wolfes
