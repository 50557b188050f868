#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dworklab {

// Base of every error the library throws. The C API maps each subclass to a
// distinct status code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed polynomial text or JSON. `position()` is a byte offset into the
// input, or npos when the error is not tied to a location.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t position = npos)
      : Error(position == npos ? message
                               : message + " at position " + std::to_string(position)),
        position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Arguments violate a documented precondition (arity, ring, prime, bounds).
class DomainError : public Error {
public:
  using Error::Error;
};

// An enumeration, memory or term ceiling was hit. Never a silent pass.
class LimitExceeded : public Error {
public:
  using Error::Error;
};

// An identity that must hold unconditionally failed, e.g. an exact division
// left a remainder. Indicates a bug, not a mathematical finding.
class ArithmeticError : public Error {
public:
  using Error::Error;
};

} // namespace dworklab
