#ifndef CHARGEFLOW_ERRORS_HPP
#define CHARGEFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chargeflow {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An input lies outside the mathematical or geometric domain of an
/// operation (probe off the grid, nonpositive width, zero carrier momentum).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A precondition that guards result quality is violated (wave function
/// does not decay at the grid boundary, excitation not localized, density
/// residual too large).
class AccuracyError : public Error {
 public:
  explicit AccuracyError(const std::string& what) : Error(what) {}
};

/// An iterative or extrapolated computation failed to settle within the
/// requested tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// A run configuration is malformed or inconsistent.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace chargeflow

#endif
