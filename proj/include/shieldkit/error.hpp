#pragma once

#include <stdexcept>
#include <string>

namespace shieldkit {

// Base class for all user-facing errors (bad input files, bad
// configurations, mismatched signatures).  Internal invariant breaches
// throw std::logic_error instead.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Error with a source location, thrown by the text-format parsers.
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line(line),
        column(column) {}

  int line;
  int column;
};

}  // namespace shieldkit
