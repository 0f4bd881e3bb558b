#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bvd {

// A precondition of an operation was violated by its arguments.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Vershik step needed an edge beyond the specified part of a point.
class TailExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Vershik step was requested at an infinite extreme (all-max or all-min) path.
class ExtremePoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed diagram document text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bvd
