// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include <somp/errors.hpp>
#include <somp/types.hpp>

// Dense real linear algebra free functions. Everything here is a pure
// function of its (immutable) inputs and accepts arbitrary Eigen
// expressions; factorizations are delegated to Eigen behind the interface.

namespace somp::linalg {

/// Throws DomainError if the expression contains NaN or Inf entries.
template <typename Derived>
void ensure_finite(const Eigen::MatrixBase<Derived>& a, const std::string& what) {
  if (!a.allFinite()) {
    throw DomainError(what + " contains non-finite entries");
  }
}

/// max_j sum_k |A_{j,k}|  (induced inf->inf norm: maximal absolute row sum).
template <typename Derived>
typename Derived::RealScalar norm_inf_to_inf(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Frobenius norm.
template <typename Derived>
typename Derived::RealScalar norm_frobenius(const Eigen::MatrixBase<Derived>& a) {
  return a.norm();
}

/// l_p norm of a vector for p in {1, 2, inf}.
template <typename Derived>
typename Derived::RealScalar norm_vec_p(const Eigen::MatrixBase<Derived>& x, Lp p) {
  EIGEN_STATIC_ASSERT_VECTOR_ONLY(Derived);
  if (x.size() == 0) return 0;
  switch (p) {
    case Lp::one:
      return x.template lpNorm<1>();
    case Lp::two:
      return x.template lpNorm<2>();
    case Lp::inf:
      return x.template lpNorm<Eigen::Infinity>();
  }
  throw DomainError("unsupported vector norm");
}

/// Eigendecomposition A = Q diag(lambda) Q^T of a symmetric matrix.
/// Eigenvalues are sorted ascending; columns of Q are orthonormal.
template <typename Scalar>
struct SymEigenResult {
  DenseVector<Scalar> eigenvalues;
  DenseMatrix<Scalar> eigenvectors;
};

/// Spectral decomposition of a symmetric matrix. The input must be square
/// and symmetric within kTol.symmetry_rel relative to its Frobenius norm.
template <typename Derived>
SymEigenResult<typename Derived::Scalar> sym_eigen(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("sym_eigen: expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  ensure_finite(a, "sym_eigen input");
  const DenseMatrix<Scalar> dense = a;
  const Scalar scale = std::max(Scalar(1), dense.norm());
  if ((dense - dense.transpose()).norm() > kTol.symmetry_rel * scale) {
    throw SymmetryError("sym_eigen: input is not symmetric within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw Error("sym_eigen: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// sqrt(lambda_max(A^T A)): the induced 2->2 norm (largest singular value).
template <typename Derived>
typename Derived::RealScalar norm_2_to_2(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const DenseMatrix<Scalar> gram = a.transpose() * a;
  const auto eig = sym_eigen(gram);
  return std::sqrt(std::max(Scalar(0), eig.eigenvalues.maxCoeff()));
}

/// argmin_Z ||A Z - B||_F for A with full column rank, via column-pivoted
/// Householder QR. Pivots below kTol.rank_rel relative to the largest are
/// treated as rank deficiencies.
template <typename DerivedA, typename DerivedB>
DenseMatrix<typename DerivedA::Scalar> least_squares(const Eigen::MatrixBase<DerivedA>& a,
                                                     const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.rows() != b.rows()) {
    throw DimensionError("least_squares: A has " + std::to_string(a.rows()) +
                         " rows but B has " + std::to_string(b.rows()));
  }
  if (a.rows() < a.cols() || a.cols() == 0) {
    throw DimensionError("least_squares: A must be m x k with m >= k >= 1");
  }
  ensure_finite(a, "least_squares A");
  ensure_finite(b, "least_squares B");
  Eigen::ColPivHouseholderQR<DenseMatrix<Scalar>> qr(a);
  qr.setThreshold(kTol.rank_rel);
  if (qr.rank() < a.cols()) {
    throw SingularityError(qr.rank(), a.cols());
  }
  return qr.solve(b.derived());
}

/// Orthogonal projection of the columns of B onto range(A): returns A A^+ B.
template <typename DerivedA, typename DerivedB>
DenseMatrix<typename DerivedA::Scalar> project_onto_range(const Eigen::MatrixBase<DerivedA>& a,
                                                          const Eigen::MatrixBase<DerivedB>& b) {
  return a * least_squares(a, b);
}

}  // namespace somp::linalg
