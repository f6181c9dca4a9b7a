#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace robocache {

/// Input that violates a documented format or value constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration value that makes a component unusable.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (e.g. duplicate insert).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Inconsistent data between otherwise valid inputs (trace vs knowledge base).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed line in a line-oriented input file. Line numbers are 1-based.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : ValidationError("line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace robocache
