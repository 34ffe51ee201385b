// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <somp/linalg.hpp>

using somp::Index;
using somp::Matrix;
using somp::Vector;
namespace linalg = somp::linalg;

namespace {

Matrix random_matrix(Index rows, Index cols, std::mt19937_64& engine) {
  std::normal_distribution<double> normal;
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = normal(engine);
  }
  return a;
}

Matrix random_symmetric(Index dim, std::mt19937_64& engine) {
  const Matrix a = random_matrix(dim, dim, engine);
  return 0.5 * (a + a.transpose());
}

// Independent oracle: ||A||_{inf->inf} = sup over sign vectors z of ||Az||_inf.
double inf_norm_by_sign_enumeration(const Matrix& a) {
  const Index k = a.cols();
  REQUIRE(k <= 10);
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
    Vector z(k);
    for (Index j = 0; j < k; ++j) z(j) = (mask >> j) & 1 ? 1.0 : -1.0;
    best = std::max(best, (a * z).cwiseAbs().maxCoeff());
  }
  return best;
}

}  // namespace

TEST_CASE("inf->inf norm matches the definition and the sign oracle") {
  CHECK(linalg::norm_inf_to_inf(Matrix::Identity(3, 3)) == 1.0);

  Matrix a(2, 2);
  a << 1, -2, 3, 0;
  CHECK(linalg::norm_inf_to_inf(a) == 3.0);

  std::mt19937_64 engine(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix b = random_matrix(6, 7, engine);
    CHECK(linalg::norm_inf_to_inf(b) ==
          doctest::Approx(inf_norm_by_sign_enumeration(b)).epsilon(1e-12));
  }
}

TEST_CASE("frobenius norm decomposes into row norms") {
  std::mt19937_64 engine(11);
  const Matrix a = random_matrix(5, 8, engine);
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i) sum += a.row(i).squaredNorm();
  CHECK(linalg::norm_frobenius(a) * linalg::norm_frobenius(a) ==
        doctest::Approx(sum).epsilon(1e-13));
}

TEST_CASE("vector p-norms") {
  Vector v(2);
  v << 3, 4;
  CHECK(linalg::norm_vec_p(v, somp::Lp::two) == 5.0);

  Vector w(3);
  w << 1, -1, 1;
  CHECK(linalg::norm_vec_p(w, somp::Lp::one) == 3.0);
  CHECK(linalg::norm_vec_p(w, somp::Lp::inf) == 1.0);

  std::mt19937_64 engine(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = random_matrix(6, 1, engine);
    const double l1 = linalg::norm_vec_p(x, somp::Lp::one);
    const double l2 = linalg::norm_vec_p(x, somp::Lp::two);
    CHECK(l2 <= l1 + 1e-14);
    CHECK(l1 <= std::sqrt(6.0) * l2 + 1e-14);
  }
}

TEST_CASE("2->2 norm: closed forms and randomized certificate") {
  CHECK(linalg::norm_2_to_2(Matrix::Identity(4, 4)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 5.0;
  CHECK(linalg::norm_2_to_2(d) == doctest::Approx(5.0).epsilon(1e-12));

  std::mt19937_64 engine(17);
  const Matrix a = random_matrix(7, 5, engine);
  const double norm = linalg::norm_2_to_2(a);
  for (int trial = 0; trial < 1000; ++trial) {
    Vector v = random_matrix(5, 1, engine);
    v.normalize();
    CHECK((a * v).norm() <= norm + 1e-10);
  }
  // The top eigenvector of A^T A attains the norm.
  const auto eig = linalg::sym_eigen(Matrix(a.transpose() * a));
  const Vector top = eig.eigenvectors.col(eig.eigenvectors.cols() - 1);
  CHECK((a * top).norm() == doctest::Approx(norm).epsilon(1e-8));
}

TEST_CASE("symmetric eigendecomposition") {
  const auto identity = linalg::sym_eigen(Matrix::Identity(3, 3));
  for (Index i = 0; i < 3; ++i) {
    CHECK(identity.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-14));
  }

  // 2x2 Gram matrix with off-diagonal rho has eigenvalues 1 -+ rho
  // (characteristic polynomial (1 - lambda)^2 = rho^2).
  Matrix gram(2, 2);
  gram << 1.0, 0.3, 0.3, 1.0;
  const auto pair = linalg::sym_eigen(gram);
  CHECK(pair.eigenvalues(0) == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(pair.eigenvalues(1) == doctest::Approx(1.3).epsilon(1e-13));

  std::mt19937_64 engine(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_symmetric(5, engine);
    const auto eig = linalg::sym_eigen(a);
    const Matrix reconstruction =
        eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.transpose();
    CHECK((reconstruction - a).norm() <= 1e-10 * std::max(1.0, a.norm()));
    CHECK((eig.eigenvectors.transpose() * eig.eigenvectors - Matrix::Identity(5, 5)).norm() <=
          1e-10);
    for (Index i = 1; i < eig.eigenvalues.size(); ++i) {
      CHECK(eig.eigenvalues(i - 1) <= eig.eigenvalues(i));
    }
  }
}

TEST_CASE("symmetric eigendecomposition rejects bad input") {
  CHECK_THROWS_AS(linalg::sym_eigen(Matrix::Zero(2, 3)), somp::DimensionError);
  Matrix skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(linalg::sym_eigen(skew), somp::SymmetryError);
}

TEST_CASE("least squares: identity, 1-d projection, plant and recover") {
  std::mt19937_64 engine(23);
  const Matrix b = random_matrix(4, 3, engine);
  CHECK((linalg::least_squares(Matrix::Identity(4, 4), b) - b).norm() <= 1e-14);

  Vector a = random_matrix(6, 1, engine);
  a.normalize();
  const Vector rhs = random_matrix(6, 1, engine);
  const Matrix z = linalg::least_squares(a, rhs);
  CHECK(z(0, 0) == doctest::Approx(a.dot(rhs)).epsilon(1e-12));

  const Matrix planted = random_matrix(3, 2, engine);
  const Matrix design = random_matrix(8, 3, engine);
  const Matrix recovered = linalg::least_squares(design, Matrix(design * planted));
  CHECK((recovered - planted).norm() <= 1e-10);

  // Residual is orthogonal to the range.
  const Matrix target = random_matrix(8, 2, engine);
  const Matrix fit = linalg::least_squares(design, target);
  CHECK((design.transpose() * (target - design * fit)).norm() <= 1e-10);
}

TEST_CASE("least squares rejects rank-deficient systems") {
  std::mt19937_64 engine(29);
  Matrix a = random_matrix(6, 3, engine);
  a.col(2) = 2.0 * a.col(0);
  try {
    linalg::least_squares(a, Matrix(random_matrix(6, 1, engine)));
    FAIL("expected SingularityError");
  } catch (const somp::SingularityError& err) {
    CHECK(err.cols == 3);
    CHECK(err.rank_found == 2);
    CHECK(std::string(err.what()).find("3 columns") != std::string::npos);
  }
  CHECK_THROWS_AS(linalg::least_squares(Matrix(random_matrix(2, 3, engine)),
                                        Matrix(random_matrix(2, 1, engine))),
                  somp::DimensionError);
}

TEST_CASE("projection onto a range") {
  std::mt19937_64 engine(31);
  const Matrix b = random_matrix(5, 2, engine);
  CHECK((linalg::project_onto_range(Matrix::Identity(5, 5), b) - b).norm() <= 1e-14);

  const Matrix a = random_matrix(7, 3, engine);
  const Matrix inside = a * random_matrix(3, 2, engine);
  CHECK((linalg::project_onto_range(a, inside) - inside).norm() <= 1e-10);

  const Matrix outside = random_matrix(7, 4, engine);
  const Matrix projected = linalg::project_onto_range(a, outside);
  CHECK((a.transpose() * (outside - projected)).norm() <= 1e-10);
  CHECK((linalg::project_onto_range(a, projected) - projected).norm() <= 1e-10);
}

TEST_CASE("projector matrix is symmetric and idempotent") {
  std::mt19937_64 engine(37);
  const Matrix a = random_matrix(6, 2, engine);
  const Matrix p = linalg::project_onto_range(a, Matrix(Matrix::Identity(6, 6)));
  CHECK((p - p.transpose()).norm() <= 1e-10);
  CHECK((p * p - p).norm() <= 1e-10);
}

TEST_CASE("norm bracket between inf->inf and frobenius") {
  std::mt19937_64 engine(41);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 1 + static_cast<Index>(engine() % 8);
    const Index k = 1 + static_cast<Index>(engine() % 8);
    const Matrix b = random_matrix(d, k, engine);
    const double inf_norm = linalg::norm_inf_to_inf(b);
    const double frob = linalg::norm_frobenius(b);
    CHECK(inf_norm <= std::sqrt(static_cast<double>(k)) * frob + 1e-12);
    CHECK(inf_norm >= frob / std::sqrt(static_cast<double>(d)) - 1e-12);
  }
}

TEST_CASE("non-finite entries are rejected") {
  Matrix a = Matrix::Zero(2, 2);
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(linalg::ensure_finite(a, "test"), somp::DomainError);
  CHECK_THROWS_AS(linalg::sym_eigen(a), somp::DomainError);
}
