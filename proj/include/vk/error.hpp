#pragma once

#include <stdexcept>
#include <string>

namespace vk {

/// Malformed user input: bad word syntax, unknown catalog name, schema mismatch.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search or enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Either a bug or a contradicted theorem.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A map or diagram is not in general position.
class GeneralPositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vk
