// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include <somp/types.hpp>

namespace somp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incompatible or invalid matrix dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Input expected to be symmetric is not, beyond tolerance.
struct SymmetryError : Error {
  using Error::Error;
};

/// Invalid argument value (empty support, zero coefficient block, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Rank-deficient system where full column rank was required.
struct SingularityError : Error {
  SingularityError(Index rank_found, Index cols)
      : Error("rank-deficient system: " + std::to_string(rank_found) +
              " independent of " + std::to_string(cols) + " columns"),
        rank_found(rank_found),
        cols(cols) {}

  Index rank_found;
  Index cols;
};

/// Exact enumeration would exceed the configured subset budget.
struct BudgetError : Error {
  BudgetError(unsigned long long required, unsigned long long budget)
      : Error("subset enumeration needs " + std::to_string(required) +
              " subsets, budget is " + std::to_string(budget)),
        required(required),
        budget(budget) {}

  unsigned long long required;
  unsigned long long budget;
};

/// A restricted isometry constant >= 1 where the bounds require delta < 1.
struct RipViolationError : Error {
  explicit RipViolationError(double delta)
      : Error("restricted isometry constant " + std::to_string(delta) +
              " is outside [0, 1)"),
        delta(delta) {}

  double delta;
};

/// Precondition of a certificate does not hold for the given input.
struct NotApplicableError : Error {
  using Error::Error;
};

}  // namespace somp
