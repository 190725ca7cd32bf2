#pragma once

#include <stdexcept>
#include <string>

namespace lotalloc {

/// Invalid argument: out-of-range index, malformed ranking, bad scoring table.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation would exceed its configured size or time budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parallel policy designated an empty or out-of-range reporter set.
class PolicyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A manipulation strategy is not well-defined for the given opponents.
class ValidityError : public std::runtime_error {
 public:
  ValidityError(const std::string& what, int stage)
      : std::runtime_error(what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

/// Malformed input file or literal.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace lotalloc
