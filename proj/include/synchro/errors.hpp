#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synchro {

// Input outside an operation's domain: bad state/letter index, bad
// construction parameters, wrong alphabet size.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed DFA v1 or DIMACS text. line() is 1-based, 0 when the problem
// is not tied to a particular line (e.g. missing rows at end of input).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A construction or enumeration would exceed a configured size limit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NotSynchronizingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace synchro
