// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

namespace somp {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;
using Index = Eigen::Index;

/// Vector norms used for residual-correlation aggregation.
enum class Lp { one, two, inf };

/// Every numerical threshold used by the library, in one place.
struct Tolerances {
  /// Relative asymmetry admitted by the symmetric eigensolver.
  double symmetry_rel = 1e-12;
  /// Relative pivot threshold for rank decisions in least squares.
  double rank_rel = 1e-12;
  /// Slack for residual-vs-range orthogonality and projector idempotency.
  double orthogonality = 1e-10;
  /// Eigendecomposition reconstruction slack, relative to max(1, ||A||_F).
  double eigen_reconstruction = 1e-10;
  /// ||Phi^T Phi - I||_F admitted for generated orthonormal frames.
  double orthonormal_gram = 1e-12;
  /// delta treated as exactly zero when certifying the orthonormal sharp case.
  double sharpness_delta = 1e-10;
  /// Sharpness gap, relative to max(1, ||X^J||_{inf->inf}).
  double sharpness_gap_rel = 1e-8;
  /// Floating-point slack when asserting proven inequalities numerically.
  double soundness_slack = 1e-10;
  /// Selection metric of an already-selected atom is zero up to this.
  double metric_zero = 1e-10;
};

inline constexpr Tolerances kTol{};

}  // namespace somp
