#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abelaut {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed group spec, element list, or JSON document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands live in different groups.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix entry violates the divisibility constraint p^(e_i - e_j) | a_ij.
/// Indices are 0-based.
class RpViolation : public Error {
 public:
  RpViolation(std::size_t row, std::size_t col, const std::string& what)
      : Error(what), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class NotAnAutomorphism : public Error {
 public:
  using Error::Error;
};

/// An enumeration or oracle bound was exceeded. Never truncated silently.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; indicates a bug, not bad input.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace abelaut
