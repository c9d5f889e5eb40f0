#pragma once

#include <stdexcept>
#include <string>

namespace tunnelph {

/// Bad user input: malformed files, invalid parameters, inconsistent data.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Text input that failed to parse. The line number is 1-based; 0 means unknown.
class ParseError : public InputError {
public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Snapshots of a sequence disagree with each other.
class ConsistencyError : public InputError {
public:
  using InputError::InputError;
};

/// A query outside the domain of the object queried (e.g. scale above max filtration).
class QueryError : public InputError {
public:
  using InputError::InputError;
};

/// A linear system that cannot be solved reliably.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace tunnelph
