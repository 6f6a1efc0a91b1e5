#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crk {

// Base of every error raised by the library. Derived types let callers
// (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector/matrix/system dimensions disagree.
class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, std::size_t expected, std::size_t actual)
      : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
              std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// A NaN or infinity reached a Vec or LinearMap.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Interfaces of a wiring diagram and the thing it is applied to or composed
// with do not line up.
class InterfaceMismatch : public Error {
 public:
  using Error::Error;
};

// A routing table refers to a port index that does not exist.
class RoutingError : public Error {
 public:
  RoutingError(const std::string& what, std::size_t coordinate)
      : Error(what), coordinate_(coordinate) {}
  std::size_t coordinate() const noexcept { return coordinate_; }

 private:
  std::size_t coordinate_;
};

// A dynamical system broke one of its structural contracts (e.g. a four-step
// update that does not advance the phase).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Simulation produced a non-finite state.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::size_t micro_step)
      : Error(what), micro_step_(micro_step) {}
  std::size_t micro_step() const noexcept { return micro_step_; }

 private:
  std::size_t micro_step_;
};

// Expression syntax error; offset is a character position in the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Expression evaluation failed (division by zero).
class EvalError : public Error {
 public:
  using Error::Error;
};

// Network description does not satisfy its schema.
class SpecError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace crk
