#ifndef SYNAD_ERRORS_H_
#define SYNAD_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synad {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_parameter"; }
};

// A quantity is mathematically undefined at the requested point
// (e.g. both class densities vanish).
class UndefinedPointError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "undefined_point"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t row)
      : Error(message + " (row " + std::to_string(row) + ")"), row_(row) {}
  std::size_t row() const noexcept { return row_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  std::size_t row_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "schema"; }
};

class ImputationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "imputation"; }
};

class ShapeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "shape"; }
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "configuration"; }
};

class UndefinedMetricError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "undefined_metric"; }
};

// Non-finite value met during forward/backward propagation.
class NumericError : public Error {
 public:
  NumericError(const std::string& message, int layer)
      : Error(message + " (layer " + std::to_string(layer) + ")"),
        layer_(layer) {}
  int layer() const noexcept { return layer_; }
  const char* kind() const noexcept override { return "numeric"; }

 private:
  int layer_;
};

}  // namespace synad

#endif  // SYNAD_ERRORS_H_
