#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad range, density
/// mismatch, missing modulus, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed set, map or schedule expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A plan or construction does not satisfy its defining inequalities.
class PlanError : public Error {
 public:
  using Error::Error;
};

/// Evaluation was requested past the end of a finite construction.
class PlanExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace adkit
