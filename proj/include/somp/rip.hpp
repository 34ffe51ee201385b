// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include <somp/model.hpp>
#include <somp/types.hpp>

// Exact restricted isometry constants for desk-scale dictionaries, by
// enumerating column subsets and reading off the extreme Gram eigenvalues.

namespace somp::rip {

/// Which side of the isometry band a witness subset violates most.
enum class BindingSide { lower, upper };

const char* to_string(BindingSide side);

/// Exact delta_1 ... delta_{s_max} with the subsets attaining them.
struct RicTable {
  std::vector<double> deltas;
  std::vector<BindingSide> sides;
  std::vector<std::vector<Index>> witnesses;

  Index max_order() const { return static_cast<Index>(deltas.size()); }
  double delta(Index s) const;
  BindingSide side(Index s) const;
  const std::vector<Index>& witness(Index s) const;
  /// delta_s < 1, as the recovery bounds require.
  bool rip_holds(Index s) const { return delta(s) < 1.0; }
};

/// Subsets that exact enumeration will visit per order before refusing.
inline constexpr unsigned long long kEnumerationBudget = 1'000'000;

/// delta_s = max over |T| = s of max(1 - lambda_min, lambda_max - 1) of the
/// Gram matrix Phi_T^T Phi_T, for s = 1..s_max. Smaller subsets are covered
/// by eigenvalue interlacing, which also forces delta_s <= delta_{s+1}; the
/// returned table asserts that monotonicity. Orders whose subset count
/// exceeds the enumeration budget raise BudgetError with the required count.
RicTable ric_exact(const Matrix& phi, Index s_max);

/// Extreme eigenvalues of Phi_J^T (I - P) Phi_J where P projects onto the
/// span of the columns in `projector_support` (empty means P = 0) and J is
/// `support`. The two index sets must be disjoint.
std::pair<double, double> gram_spectrum_bounds(const Matrix& phi,
                                               const model::Support& support,
                                               const model::Support& projector_support);

/// True if [lo, hi] sits inside [1 - delta, 1 + delta] up to `slack`.
inline bool gram_sandwich_holds(double lo, double hi, double delta,
                                double slack = kTol.soundness_slack) {
  return lo >= 1.0 - delta - slack && hi <= 1.0 + delta + slack;
}

/// Number of size-s subsets of an n-set, saturating at the budget cap.
unsigned long long subset_count(Index n, Index s);

}  // namespace somp::rip
