#pragma once

#include <stdexcept>
#include <string>

namespace thetaforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient or term was requested beyond the degree a series knows.
class CutoffError : public Error {
 public:
  using Error::Error;
};

class NonInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Negative exchange parameters, non-positive cutoffs and similar.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A basepoint lies on the support of the diagram.
class OnWallError : public Error {
 public:
  using Error::Error;
};

class NotInSpanError : public Error {
 public:
  using Error::Error;
};

/// Raised when an internal invariant breaks, e.g. a loop deviation that
/// cannot be cancelled by ray walls. Always indicates a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input. `field` names the offending key path.
class FormatError : public Error {
 public:
  FormatError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace thetaforge
