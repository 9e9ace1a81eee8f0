#pragma once

#include <stdexcept>
#include <string>

namespace schmearlab {

// Raised when an operation's precondition on its mathematical input fails
// (zero divisor, letter out of range, sequence not converging, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the text parsers. Line and column are 1-based; 0 means unknown.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace schmearlab
