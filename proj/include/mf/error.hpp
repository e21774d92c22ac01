#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A configured size/time bound would be exceeded.
class BoundError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition does not hold (element outside group, non-generating pair, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An exact self-check failed: corrupt data or an internal bug.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// A procedure ran to completion without reaching a definite answer
// (e.g. an unstabilized closure schedule). Never a silent guess.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace mf
