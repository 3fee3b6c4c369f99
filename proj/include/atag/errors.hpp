// Error types shared across parsing, graph construction, and resource guards.
#pragma once

#include <stdexcept>
#include <string>

namespace atag {

// Text input rejected at a specific position (1-based line and column).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

// A structural graph invariant would be broken: duplicate (source, action)
// pair, unknown endpoint, a cycle where acyclicity is required, or
// inconsistent path label sets. Signals a bug when raised mid-transform.
class GraphInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A configured budget (states, transitions, traces, path length) would be
// exceeded. Raised before the offending allocation or enumeration.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace atag
