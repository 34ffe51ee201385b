// SPDX-License-Identifier: Apache-2.0

#include <somp/bounds.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <somp/linalg.hpp>

namespace somp::bounds {

namespace {

void require_valid_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw RipViolationError(delta);
}

/// Support S_t selected before iteration t; throws if t is outside the trace.
model::Support support_before(const pursuit::PursuitTrace& trace, Index t) {
  if (t < 0 || t >= static_cast<Index>(trace.residuals.size())) {
    throw DomainError("iteration " + std::to_string(t) + " is outside the trace");
  }
  std::vector<Index> selected;
  for (Index i = 0; i < t; ++i) {
    selected.push_back(trace.records[static_cast<std::size_t>(i)].selected_atom);
  }
  std::sort(selected.begin(), selected.end());
  return model::Support(std::move(selected));
}

}  // namespace

std::string to_string(DeltaSource source) {
  switch (source) {
    case DeltaSource::exact_ric: return "exact_ric";
    case DeltaSource::support_ric: return "support_ric";
    case DeltaSource::hypothetical: return "hypothetical";
  }
  throw DomainError("unknown delta source");
}

DeltaSource delta_source_from_string(const std::string& name) {
  if (name == "exact_ric" || name == "exact") return DeltaSource::exact_ric;
  if (name == "support_ric" || name == "support") return DeltaSource::support_ric;
  if (name == "hypothetical" || name == "grid") return DeltaSource::hypothetical;
  throw DomainError("unknown delta source: " + name);
}

double spectrum_inf_norm_bound(const Matrix& a, double alpha) {
  const auto eig = linalg::sym_eigen(a);  // enforces symmetry within tolerance
  const double spread = (eig.eigenvalues.array() - alpha).abs().maxCoeff();
  return std::abs(alpha) + std::sqrt(static_cast<double>(a.rows())) * spread;
}

double exact_metric(const model::MmvInstance& instance, const pursuit::PursuitTrace& trace,
                    Index t) {
  if (t < 0 || t >= static_cast<Index>(trace.residuals.size())) {
    throw DomainError("exact_metric: iteration " + std::to_string(t) +
                      " is outside the trace");
  }
  const Matrix phi_s = model::submatrix_columns(instance.phi, instance.support);
  return linalg::norm_inf_to_inf(phi_s.transpose() *
                                 trace.residuals[static_cast<std::size_t>(t)]);
}

RipLowerBound rip_lower_bound(double delta, Index support_size, Index t,
                              const Matrix& x_remaining) {
  require_valid_delta(delta);
  if (t < 0 || t >= support_size) {
    throw DomainError("rip_lower_bound requires 0 <= t < |S|");
  }
  if (x_remaining.rows() != support_size - t) {
    throw DimensionError("rip_lower_bound: expected " + std::to_string(support_size - t) +
                         " coefficient rows, got " + std::to_string(x_remaining.rows()));
  }
  const double root = std::sqrt(static_cast<double>(support_size - t));
  RipLowerBound bound;
  bound.psi = (1.0 - delta) * (1.0 + delta) / (1.0 + root * delta);
  bound.tau = linalg::norm_inf_to_inf(x_remaining);
  bound.value = bound.psi * bound.tau;
  return bound;
}

double frobenius_lower_bound(double delta, Index support_size, Index t,
                             const Matrix& x_remaining) {
  require_valid_delta(delta);
  if (t < 0 || t >= support_size) {
    throw DomainError("frobenius_lower_bound requires 0 <= t < |S|");
  }
  if (x_remaining.rows() != support_size - t) {
    throw DimensionError("frobenius_lower_bound: expected " +
                         std::to_string(support_size - t) + " coefficient rows, got " +
                         std::to_string(x_remaining.rows()));
  }
  const double root = std::sqrt(static_cast<double>(support_size - t));
  return (1.0 - delta) * x_remaining.norm() / root;
}

RatioBracket bound_ratio(double delta, Index support_size, Index jt_size,
                         const Matrix& x_remaining) {
  require_valid_delta(delta);
  if (jt_size < 1 || jt_size > support_size) {
    throw DomainError("bound_ratio requires 1 <= |J_t| <= |S|");
  }
  if (x_remaining.rows() != jt_size) {
    throw DimensionError("bound_ratio: expected " + std::to_string(jt_size) +
                         " coefficient rows, got " + std::to_string(x_remaining.rows()));
  }
  const double frob = x_remaining.norm();
  if (frob == 0.0) {
    throw DomainError("bound_ratio: ratio undefined for an all-zero coefficient block");
  }
  const double k = static_cast<double>(x_remaining.cols());
  const double root_j = std::sqrt(static_cast<double>(jt_size));
  RatioBracket bracket;
  bracket.value = root_j * (1.0 + delta) / (1.0 + root_j * delta) *
                  linalg::norm_inf_to_inf(x_remaining) / frob;
  bracket.lower = (1.0 + delta) / (1.0 + root_j * delta);
  bracket.upper = delta > 0.0
                      ? std::sqrt(k) * (1.0 + delta) / delta
                      : std::sqrt(k) * root_j * (1.0 + delta) / (1.0 + root_j * delta);
  if (bracket.value < bracket.lower - kTol.soundness_slack ||
      bracket.value > bracket.upper + kTol.soundness_slack) {
    throw Error("bound_ratio: bracket violated; inputs are inconsistent");
  }
  return bracket;
}

SharpnessCertificate orthonormal_sharpness(const model::MmvInstance& instance,
                                           const pursuit::PursuitTrace& trace, Index t) {
  const model::Support& truth = instance.support;
  const Matrix phi_s = model::submatrix_columns(instance.phi, truth);
  const Matrix gram_defect =
      phi_s.transpose() * phi_s - Matrix::Identity(truth.size(), truth.size());
  if (linalg::norm_2_to_2(gram_defect) > kTol.sharpness_delta) {
    throw NotApplicableError(
        "orthonormal_sharpness: atoms on the support are not orthonormal");
  }
  const model::Support selected = support_before(trace, t);
  if (!selected.subset_of(truth) || selected.size() >= truth.size()) {
    throw NotApplicableError(
        "orthonormal_sharpness: support before iteration is not a proper subset of the truth");
  }
  const model::Support remaining = selected.complement_within(truth);
  const double tau =
      linalg::norm_inf_to_inf(model::submatrix_rows(instance.x, remaining));
  const double gap = std::abs(exact_metric(instance, trace, t) - tau);
  return {gap <= kTol.sharpness_gap_rel * std::max(1.0, tau), gap};
}

BoundReport bound_report(const model::MmvInstance& instance, const pursuit::PursuitTrace& trace,
                         Index t, double delta, DeltaSource source) {
  const model::Support selected = support_before(trace, t);
  if (!selected.subset_of(instance.support) || selected.size() >= instance.support.size()) {
    throw DomainError("bound_report: iteration " + std::to_string(t) +
                      " does not satisfy S_t proper subset of S");
  }
  BoundReport report;
  report.t = t;
  report.remaining = selected.complement_within(instance.support);
  report.delta = delta;
  report.delta_source = source;

  const Matrix x_remaining = model::submatrix_rows(instance.x, report.remaining);
  const Index support_size = instance.support.size();
  report.exact = exact_metric(instance, trace, t);
  const RipLowerBound rip = rip_lower_bound(delta, support_size, t, x_remaining);
  report.psi = rip.psi;
  report.tau = rip.tau;
  report.rip_bound = rip.value;
  report.frobenius_bound = frobenius_lower_bound(delta, support_size, t, x_remaining);
  if (report.frobenius_bound > 0.0) {
    const RatioBracket bracket =
        bound_ratio(delta, support_size, report.remaining.size(), x_remaining);
    report.ratio_defined = true;
    report.ratio = bracket.value;
    report.ratio_lower = bracket.lower;
    report.ratio_upper = bracket.upper;
  } else {
    // A zero coefficient block makes the ratio undefined; flag it instead of
    // reporting an infinity.
    report.ratio_defined = false;
    report.ratio = std::numeric_limits<double>::quiet_NaN();
    report.ratio_lower = std::numeric_limits<double>::quiet_NaN();
    report.ratio_upper = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace somp::bounds
