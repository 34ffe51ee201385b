// SPDX-License-Identifier: Apache-2.0

#include <somp/rip.hpp>

#include <algorithm>
#include <limits>
#include <string>

#include <somp/linalg.hpp>

namespace somp::rip {

const char* to_string(BindingSide side) {
  return side == BindingSide::lower ? "lower" : "upper";
}

double RicTable::delta(Index s) const {
  if (s < 1 || s > max_order()) throw DomainError("RicTable: order out of range");
  return deltas[static_cast<std::size_t>(s - 1)];
}

BindingSide RicTable::side(Index s) const {
  if (s < 1 || s > max_order()) throw DomainError("RicTable: order out of range");
  return sides[static_cast<std::size_t>(s - 1)];
}

const std::vector<Index>& RicTable::witness(Index s) const {
  if (s < 1 || s > max_order()) throw DomainError("RicTable: order out of range");
  return witnesses[static_cast<std::size_t>(s - 1)];
}

unsigned long long subset_count(Index n, Index s) {
  if (s < 0 || s > n) return 0;
  constexpr auto kMax = std::numeric_limits<unsigned long long>::max();
  unsigned long long count = 1;
  for (Index i = 1; i <= s; ++i) {
    const unsigned long long numerator = static_cast<unsigned long long>(n - s + i);
    if (count > kMax / numerator) return kMax;  // saturate instead of overflowing
    // Exact: the running product C(n-s+i, i) is an integer at every step.
    count = count * numerator / static_cast<unsigned long long>(i);
  }
  return count;
}

namespace {

// Advances a strictly increasing index tuple in colexicographic order.
// Returns false once the last subset has been visited.
bool next_subset_colex(std::vector<Index>& subset, Index n) {
  const Index s = static_cast<Index>(subset.size());
  for (Index i = 0; i < s; ++i) {
    const Index ceiling = (i + 1 < s) ? subset[static_cast<std::size_t>(i + 1)] : n;
    if (subset[static_cast<std::size_t>(i)] + 1 < ceiling) {
      ++subset[static_cast<std::size_t>(i)];
      for (Index j = 0; j < i; ++j) subset[static_cast<std::size_t>(j)] = j;
      return true;
    }
  }
  return false;
}

}  // namespace

RicTable ric_exact(const Matrix& phi, Index s_max) {
  const Index n = phi.cols();
  if (n < 1 || phi.rows() < 1) throw DimensionError("ric_exact: phi must be non-empty");
  if (s_max < 1 || s_max > n) throw DomainError("ric_exact requires 1 <= s_max <= n");
  linalg::ensure_finite(phi, "ric_exact phi");
  for (Index s = 1; s <= s_max; ++s) {
    const unsigned long long required = subset_count(n, s);
    if (required > kEnumerationBudget) {
      throw BudgetError(required, kEnumerationBudget);
    }
  }

  const Matrix gram_full = phi.transpose() * phi;
  RicTable table;
  for (Index s = 1; s <= s_max; ++s) {
    std::vector<Index> subset(static_cast<std::size_t>(s));
    for (Index i = 0; i < s; ++i) subset[static_cast<std::size_t>(i)] = i;

    double best = -1.0;
    BindingSide best_side = BindingSide::lower;
    std::vector<Index> best_subset;
    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    do {
      const Matrix gram = gram_full(subset, subset);
      solver.compute(gram, Eigen::EigenvaluesOnly);
      const double low = 1.0 - solver.eigenvalues().minCoeff();
      const double high = solver.eigenvalues().maxCoeff() - 1.0;
      const double candidate = std::max(low, high);
      if (candidate > best) {
        best = candidate;
        best_side = (high >= low) ? BindingSide::upper : BindingSide::lower;
        best_subset = subset;
      }
    } while (next_subset_colex(subset, n));

    best = std::max(best, 0.0);
    table.deltas.push_back(best);
    table.sides.push_back(best_side);
    table.witnesses.push_back(std::move(best_subset));
  }

  // Interlacing makes the exact constants monotone; anything beyond
  // eigensolver noise indicates a bug.
  for (Index s = 2; s <= s_max; ++s) {
    if (table.delta(s) < table.delta(s - 1) - 1e-12) {
      throw Error("ric_exact: non-monotone constants at order " + std::to_string(s));
    }
    table.deltas[static_cast<std::size_t>(s - 1)] =
        std::max(table.delta(s), table.delta(s - 1));
  }
  return table;
}

std::pair<double, double> gram_spectrum_bounds(const Matrix& phi,
                                               const model::Support& support,
                                               const model::Support& projector_support) {
  if (support.empty()) {
    throw DomainError("gram_spectrum_bounds requires a non-empty support");
  }
  for (Index j : support.indices()) {
    if (projector_support.contains(j)) {
      throw DomainError("gram_spectrum_bounds: support and projector support overlap at " +
                        std::to_string(j));
    }
  }
  const Matrix phi_j = model::submatrix_columns(phi, support);
  Matrix deflated = phi_j;
  if (!projector_support.empty()) {
    const Matrix phi_p = model::submatrix_columns(phi, projector_support);
    deflated -= linalg::project_onto_range(phi_p, phi_j);
  }
  Matrix gram = phi_j.transpose() * deflated;
  gram = 0.5 * (gram + gram.transpose());  // exact symmetry for the solver
  const auto eig = linalg::sym_eigen(gram);
  return {eig.eigenvalues.minCoeff(), eig.eigenvalues.maxCoeff()};
}

}  // namespace somp::rip
