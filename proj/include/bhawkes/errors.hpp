#pragma once

#include <stdexcept>
#include <string>

namespace bhawkes {

/// Bad input: parameters, grids, configuration. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical or simulation failure at run time. Maps to CLI exit code 2.
class RuntimeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class StabilityViolation : public ValidationError {
public:
  StabilityViolation(double lhs, double rhs);
  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

private:
  double lhs_;
  double rhs_;
};

class NonPositiveParameter : public ValidationError {
public:
  NonPositiveParameter(std::string field, double value);
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class HorizonNonPositive : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class GridOutOfRange : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class UnsupportedKind : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InsufficientData : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class StepSizeRejected : public RuntimeError {
public:
  using RuntimeError::RuntimeError;
};

/// A single cascade exceeded the node guard.
class ClusterOverflow : public RuntimeError {
public:
  using RuntimeError::RuntimeError;
};

} // namespace bhawkes
