#pragma once

#include <stdexcept>
#include <string>

namespace laglab {

// Base for every error the library raises on purpose. The CLI maps these to
// exit status 1; configuration I/O failures get their own code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the declared domain of a symbol or callable.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested operation is not supported by this representation.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Inconsistent inputs: grid mismatch, bad configuration field, dimension clash.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Config file could not be read at all.
class ConfigIoError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// exp(i phi / hbar) is not single-valued on the circle.
class WindingError : public Error {
 public:
  explicit WindingError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class SingularShellError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A torus mode does not fit on the quantum lattice.
class AliasingError : public Error {
 public:
  using Error::Error;
};

}  // namespace laglab
