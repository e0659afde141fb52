#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace invfac {

/// Argument outside the region where a function or representation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact evaluation hit z = 0, -1, -2, ... in a rising-factorial denominator.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A diagnostic needed nonzero data and got a zero term.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line of the offending input, 0 when not line oriented.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace invfac
