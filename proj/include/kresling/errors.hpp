#pragma once

#include <stdexcept>
#include <string>

namespace kresling {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag used by the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("domain", message) {}
};

/// Pattern or state that cannot close as a truss.
class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& message) : Error("geometry", message) {}
};

/// Degenerate panel or vanishing volume rate.
class SingularConfigurationError : public Error {
 public:
  explicit SingularConfigurationError(const std::string& message)
      : Error("singular", message) {}
};

class NoEquilibriumError : public Error {
 public:
  explicit NoEquilibriumError(const std::string& message)
      : Error("no_equilibrium", message) {}
};

class FitError : public Error {
 public:
  explicit FitError(const std::string& message) : Error("fit", message) {}
};

/// Malformed user data (curves, tables).
class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error("input", message) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message) : Error("argument", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

}  // namespace kresling
