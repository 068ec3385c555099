#pragma once

#include <stdexcept>
#include <string>

namespace pdfalign {

// Bad user input: malformed files, invalid parameters, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parse failure that knows where it happened.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError("line " + std::to_string(line) + ": " + what), detail_(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
};

// Malformed automaton structure (unreachable states, broken walks, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant. Should never surface.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pdfalign
