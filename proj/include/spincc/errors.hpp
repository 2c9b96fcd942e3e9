#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spincc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain (bad input).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operands live in different rings.
class RingMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// A property that holds by construction failed; signals an engine bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace spincc
