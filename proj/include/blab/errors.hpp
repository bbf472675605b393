#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Operands live in different variable contexts, coefficient domains or groups.
class ContextError : public Error {
 public:
  using Error::Error;
};

// A precondition on the mathematical input does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A configuration document is malformed or names something that does not exist.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A search or enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace blab
