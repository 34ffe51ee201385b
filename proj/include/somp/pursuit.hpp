// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <somp/model.hpp>
#include <somp/types.hpp>

// Simultaneous orthogonal matching pursuit with full per-iteration tracing.
// For K = 1 measurement vectors this is plain orthogonal matching pursuit.

namespace somp::pursuit {

enum class TieBreak { lowest_index };

struct PursuitConfig {
  /// Norm aggregating the per-column residual correlations at selection time.
  Lp selection_norm = Lp::one;
  /// Number of iterations s (equivalently, atoms to select).
  Index max_iterations = 1;
  TieBreak tie_break = TieBreak::lowest_index;
};

struct IterationRecord {
  Index t = 0;
  Index selected_atom = 0;
  /// ||R^(t)^T phi_j||_p for every column j, evaluated before selection.
  Vector metric_values;
  model::Support support_after;
  /// ||R^(t+1)||_F after the projection update.
  double residual_frobenius = 0.0;
};

struct PursuitTrace {
  std::vector<IterationRecord> records;
  model::Support final_support;
  /// Residual matrices R^(0), ..., R^(s); residuals[t] is the residual the
  /// iteration-t selection saw.
  std::vector<Matrix> residuals;

  Index iterations() const { return static_cast<Index>(records.size()); }

  /// Per-iteration flag: the support S_t held *before* iteration t is a
  /// proper subset of the true support.
  std::vector<bool> correct_before(const model::Support& truth) const;

  /// Per-iteration flag: every atom selected through iteration t (inclusive)
  /// belongs to the true support.
  std::vector<bool> correct_so_far(const model::Support& truth) const;
};

/// Raised when pursuit cannot continue; carries the trace accumulated so far.
struct PursuitError : Error {
  PursuitError(const std::string& message, PursuitTrace partial)
      : Error(message), partial(std::move(partial)) {}

  PursuitTrace partial;
};

/// ||R^T phi_j||_p for every column j of phi.
Vector selection_metric(const Matrix& residual, const Matrix& phi, Lp p);

/// (I - P) y where P projects onto range(phi restricted to `support`).
Matrix residual_update(const Matrix& y, const Matrix& phi, const model::Support& support);

/// Runs `config.max_iterations` pursuit iterations: select the atom with the
/// largest aggregated correlation (ties to the lowest index), grow the
/// support, and re-project Y onto the span of the selected atoms. Selecting
/// an already-selected atom is a conditioning diagnostic and raises
/// PursuitError rather than looping.
PursuitTrace somp(const Matrix& y, const Matrix& phi, const PursuitConfig& config);

}  // namespace somp::pursuit
