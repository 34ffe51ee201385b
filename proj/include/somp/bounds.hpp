// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <somp/model.hpp>
#include <somp/pursuit.hpp>
#include <somp/types.hpp>

// Lower bounds on the maximal correlation between the residual and the
// correct atoms, max_{j in S} ||R^(t)^T phi_j||_1 = ||Phi_S^T R^(t)||_{inf->inf}:
// the exact metric, a RIP-based spectral bound psi * tau with
//   psi = (1 - delta)(1 + delta) / (1 + sqrt(|J_t|) delta),
//   tau = ||X^{J_t}||_{inf->inf},
// the older Frobenius bound (1 - delta) ||X^{J_t}||_F / sqrt(|J_t|), and the
// ratio of the two with its two-sided bracket. J_t denotes the correct atoms
// not yet selected at iteration t.

namespace somp::bounds {

/// Where the delta fed into a bound came from.
enum class DeltaSource { exact_ric, support_ric, hypothetical };

std::string to_string(DeltaSource source);
DeltaSource delta_source_from_string(const std::string& name);

/// |alpha| + sqrt(d) * max_j |lambda_j - alpha| for a symmetric d x d matrix
/// with eigenvalues lambda_j. Upper-bounds ||A||_{inf->inf} for every real
/// centering alpha.
double spectrum_inf_norm_bound(const Matrix& a, double alpha);

/// The centering (1 + delta)^-1 (1 - delta)^-1 used when bounding the
/// inverse deflated Gram matrix: the midpoint of its admissible spectrum.
inline double spectrum_midpoint(double delta) {
  return 1.0 / ((1.0 + delta) * (1.0 - delta));
}

/// ||Phi_S^T R^(t)||_{inf->inf} for the instance's true support, evaluated
/// on the residual the trace recorded at iteration t.
double exact_metric(const model::MmvInstance& instance, const pursuit::PursuitTrace& trace,
                    Index t);

struct RipLowerBound {
  double psi = 0.0;
  double tau = 0.0;
  double value = 0.0;  // psi * tau
};

/// RIP-based lower bound on the exact metric at iteration t, valid whenever
/// only correct atoms were selected before t and delta < 1. `x_remaining`
/// holds the rows of X indexed by J_t (so it has support_size - t rows).
RipLowerBound rip_lower_bound(double delta, Index support_size, Index t,
                              const Matrix& x_remaining);

/// Frobenius-based lower bound (1 - delta) ||X^{J_t}||_F / sqrt(|S| - t)
/// under the same hypotheses.
double frobenius_lower_bound(double delta, Index support_size, Index t,
                             const Matrix& x_remaining);

struct RatioBracket {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Ratio of the RIP-based bound to the Frobenius bound,
///   r = sqrt(|J_t|) (1 + delta) / (1 + sqrt(|J_t|) delta)
///       * ||X^{J_t}||_{inf->inf} / ||X^{J_t}||_F,
/// with its bracket. The upper bracket sqrt(K) (1 + delta) / delta needs
/// delta > 0; for delta = 0 the tighter middle bracket
/// sqrt(K) sqrt(|J_t|) (1 + delta) / (1 + sqrt(|J_t|) delta) is reported.
RatioBracket bound_ratio(double delta, Index support_size, Index jt_size,
                         const Matrix& x_remaining);

struct SharpnessCertificate {
  bool sharp = false;
  double gap = 0.0;
};

/// For instances whose correct atoms are orthonormal (delta = 0 on the
/// support), the exact metric equals ||X^{J_t}||_{inf->inf}; returns whether
/// the identity holds within kTol.sharpness_gap_rel and the observed gap.
/// Raises NotApplicableError when the atoms are not orthonormal or incorrect
/// atoms were selected before t.
SharpnessCertificate orthonormal_sharpness(const model::MmvInstance& instance,
                                           const pursuit::PursuitTrace& trace, Index t);

/// Everything the bound comparison knows about one iteration.
struct BoundReport {
  Index t = 0;
  model::Support remaining;  // J_t
  double exact = 0.0;
  double psi = 0.0;
  double tau = 0.0;
  double rip_bound = 0.0;
  double frobenius_bound = 0.0;
  bool ratio_defined = false;
  double ratio = 0.0;
  double ratio_lower = 0.0;
  double ratio_upper = 0.0;
  double delta = 0.0;
  DeltaSource delta_source = DeltaSource::support_ric;

  Index jt_size() const { return remaining.size(); }
  double slack_rip() const { return exact - rip_bound; }
  double slack_frobenius() const { return exact - frobenius_bound; }
};

/// Assembles the full report for iteration t of a traced pursuit. Requires
/// S_t, the support before iteration t, to contain only correct atoms.
BoundReport bound_report(const model::MmvInstance& instance, const pursuit::PursuitTrace& trace,
                         Index t, double delta, DeltaSource source);

}  // namespace somp::bounds
