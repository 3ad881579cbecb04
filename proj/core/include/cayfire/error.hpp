#pragma once

#include <stdexcept>
#include <string>

namespace cayfire {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed descriptor, element bytes, config text, or file content.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A requested computation would exceed the configured memory budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, int largest_feasible_radius)
      : Error(what), largest_feasible_radius(largest_feasible_radius) {}

  int largest_feasible_radius;
};

/// An illegal move in the protection/spread game (budget overrun,
/// protecting a burning vertex, truncation-guard violation, ...).
class SimulationError : public Error {
 public:
  explicit SimulationError(const std::string& what, int turn = -1)
      : Error(what), turn(turn) {}

  int turn;
};

}  // namespace cayfire
