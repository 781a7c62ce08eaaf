#pragma once

#include <stdexcept>
#include <string>

namespace qbc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a type invariant (bad trace, non-normalized vector, unknown
// label, ...). Reported by the CLI with the ERR_VALIDATE prefix.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class LabelNotFound : public ValidationError {
 public:
  explicit LabelNotFound(const std::string& label)
      : ValidationError("label not found: " + label) {}
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A computation would exceed its configured size budget (ERR_BUDGET).
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbc
