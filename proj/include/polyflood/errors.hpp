#pragma once

#include <stdexcept>
#include <string>

namespace polyflood {

/// Argument outside the admissible (s, c) rectangle or otherwise out of range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The flux model violates one of its structural hypotheses (no bracket,
/// no interior maximum, ...).
class ModelInvalidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside a time step: NaN/Inf fluxes, out-of-range saturation,
/// concentration recovery failure.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, long cell = -1, double time = 0.0)
      : std::runtime_error(what), cell_(cell), time_(time) {}

  long cell() const noexcept { return cell_; }
  double time() const noexcept { return time_; }

 private:
  long cell_;
  double time_;
};

/// Bad configuration file or command-line value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyflood
