// SPDX-License-Identifier: Apache-2.0

#include <somp/pursuit.hpp>

#include <algorithm>
#include <string>

#include <somp/linalg.hpp>

namespace somp::pursuit {

std::vector<bool> PursuitTrace::correct_before(const model::Support& truth) const {
  std::vector<bool> flags(records.size());
  bool all_correct = true;
  for (std::size_t t = 0; t < records.size(); ++t) {
    // S_t is what was selected in iterations 0..t-1.
    flags[t] = all_correct && static_cast<Index>(t) < truth.size();
    all_correct = all_correct && truth.contains(records[t].selected_atom);
  }
  return flags;
}

std::vector<bool> PursuitTrace::correct_so_far(const model::Support& truth) const {
  std::vector<bool> flags(records.size());
  bool all_correct = true;
  for (std::size_t t = 0; t < records.size(); ++t) {
    all_correct = all_correct && truth.contains(records[t].selected_atom);
    flags[t] = all_correct;
  }
  return flags;
}

Vector selection_metric(const Matrix& residual, const Matrix& phi, Lp p) {
  if (residual.rows() != phi.rows()) {
    throw DimensionError("selection_metric: residual and phi row counts differ");
  }
  const Matrix correlations = phi.transpose() * residual;  // n x K
  switch (p) {
    case Lp::one:
      return correlations.cwiseAbs().rowwise().sum();
    case Lp::two:
      return correlations.rowwise().norm();
    case Lp::inf:
      return correlations.cwiseAbs().rowwise().maxCoeff();
  }
  throw DomainError("unsupported selection norm");
}

Matrix residual_update(const Matrix& y, const Matrix& phi, const model::Support& support) {
  if (support.empty()) {
    throw DomainError("residual_update requires a non-empty support");
  }
  const Matrix phi_s = model::submatrix_columns(phi, support);
  return y - linalg::project_onto_range(phi_s, y);
}

namespace {

Index argmax_lowest_index(const Vector& values) {
  Index best = 0;
  for (Index j = 1; j < values.size(); ++j) {
    if (values(j) > values(best)) best = j;
  }
  return best;
}

}  // namespace

PursuitTrace somp(const Matrix& y, const Matrix& phi, const PursuitConfig& config) {
  if (y.rows() != phi.rows()) {
    throw DimensionError("somp: y and phi row counts differ");
  }
  if (y.cols() < 1 || phi.cols() < 1) {
    throw DimensionError("somp: y and phi must be non-empty");
  }
  if (config.max_iterations < 1 || config.max_iterations > phi.cols()) {
    throw DomainError("somp: max_iterations must be in [1, n]");
  }
  linalg::ensure_finite(y, "somp y");
  linalg::ensure_finite(phi, "somp phi");

  PursuitTrace trace;
  trace.residuals.push_back(y);
  std::vector<Index> selected_sorted;

  for (Index t = 0; t < config.max_iterations; ++t) {
    const Matrix& residual = trace.residuals.back();
    Vector metric = selection_metric(residual, phi, config.selection_norm);
    const Index atom = argmax_lowest_index(metric);

    if (std::binary_search(selected_sorted.begin(), selected_sorted.end(), atom)) {
      throw PursuitError("somp: atom " + std::to_string(atom) +
                             " re-selected at iteration " + std::to_string(t) +
                             "; residual is numerically degenerate",
                         std::move(trace));
    }
    selected_sorted.insert(
        std::upper_bound(selected_sorted.begin(), selected_sorted.end(), atom), atom);
    model::Support support(selected_sorted);

    Matrix next_residual;
    try {
      next_residual = residual_update(y, phi, support);
    } catch (const SingularityError& err) {
      throw PursuitError("somp: selected atoms are rank deficient at iteration " +
                             std::to_string(t) + ": " + err.what(),
                         std::move(trace));
    }

    IterationRecord record;
    record.t = t;
    record.selected_atom = atom;
    record.metric_values = std::move(metric);
    record.support_after = support;
    record.residual_frobenius = next_residual.norm();
    trace.records.push_back(std::move(record));
    trace.residuals.push_back(std::move(next_residual));
    trace.final_support = std::move(support);
  }
  return trace;
}

}  // namespace somp::pursuit
