#pragma once

#include <stdexcept>
#include <string>

namespace modegate {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration file or invalid run parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge; carries the last residual.
class SolverError : public Error {
 public:
  SolverError(const std::string& msg, double residual)
      : Error(msg + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// Two ions at the same position, or otherwise unusable geometry.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// Chain is not transversely stable; names the offending mode.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& msg, int mode_index)
      : Error(msg), mode_index_(mode_index) {}
  int mode_index() const { return mode_index_; }

 private:
  int mode_index_ = -1;
};

/// No solution exists in the searched region; carries the best residual seen.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& msg, double residual)
      : Error(msg + " (best residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// Closed-form denominator hit a pole; caller should switch evaluation path.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Ion pair has no coupling through any mode at the chosen harmonic.
class DegenerateCouplingError : public Error {
 public:
  using Error::Error;
};

/// Error budget cannot be met; carries the irreducible contribution that
/// already exceeds it.
class BudgetInfeasibleError : public Error {
 public:
  explicit BudgetInfeasibleError(const std::string& msg) : Error(msg) {}
  BudgetInfeasibleError(const std::string& msg, double irreducible)
      : Error(msg), irreducible_(irreducible) {}
  double irreducible() const { return irreducible_; }

 private:
  double irreducible_ = 0.0;
};

/// scan/select produced no admissible rows.
class SelectionError : public Error {
 public:
  using Error::Error;
};

/// Quadrature failed to reach the requested tolerance; carries the best
/// estimate and its error bar.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& msg, double estimate, double error_bar)
      : Error(msg + " (estimate " + std::to_string(estimate) + " +/- " +
              std::to_string(error_bar) + ")"),
        estimate_(estimate),
        error_bar_(error_bar) {}
  double estimate() const { return estimate_; }
  double error_bar() const { return error_bar_; }

 private:
  double estimate_ = 0.0;
  double error_bar_ = 0.0;
};

}  // namespace modegate
