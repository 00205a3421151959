#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spgemm_hg {

// Base class for errors caused by bad input (files, parameters, instances).
// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

// A balanced partition cannot exist because one vertex alone exceeds the
// per-part computation budget.
class InfeasibleBalance : public InputError {
 public:
  InfeasibleBalance(std::size_t vertex, const std::string& what)
      : InputError(what), vertex_(vertex) {}

  std::size_t vertex() const { return vertex_; }

 private:
  std::size_t vertex_;
};

// An exhaustive search was asked to run on an instance above its size guard.
class GuardExceeded : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace spgemm_hg
