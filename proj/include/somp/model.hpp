// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <somp/errors.hpp>
#include <somp/types.hpp>

// Problem-instance construction for the multiple-measurement-vector model
// Y = Phi X: seeded generators for the measurement matrix, the jointly
// sparse coefficient matrix, and the assembled instance.

namespace somp::model {

/// Strictly increasing set of row/column indices.
class Support {
 public:
  Support() = default;
  explicit Support(std::vector<Index> indices);

  const std::vector<Index>& indices() const { return indices_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(Index j) const;

  /// True if this support is contained in `other`.
  bool subset_of(const Support& other) const;
  /// Indices of `other` that are not in this support.
  Support complement_within(const Support& other) const;

  bool operator==(const Support& other) const = default;

 private:
  std::vector<Index> indices_;
};

/// Deterministic stream of random values. The generator is pinned to
/// splitmix64-seeded mt19937_64 with 53-bit uniforms and Box-Muller normals
/// so output is identical across standard libraries; the name is recorded
/// in instance metadata.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64+mt19937_64/box-muller";

  explicit Rng(std::uint64_t seed);

  /// Derives an independent stream seed from (seed, stream).
  static std::uint64_t split(std::uint64_t seed, std::uint64_t stream);

  double uniform();                    // [0, 1)
  double normal();                     // N(0, 1)
  std::int64_t below(std::int64_t n);  // {0, ..., n-1}
  double sign();                       // -1 or +1

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Coefficient row patterns.
/// Secondary dominance factor between consecutive non-designated rows. Keeps
/// every subset of the support with a single dominant row while the total
/// dynamic range stays well inside double precision.
inline constexpr double kDominantRowInnerFactor = 64.0;

/// One designated row overwhelms all others: each of its entries has
/// magnitude at least `factor` times the combined l1 mass of every other
/// supported row. The remaining rows are themselves totally ordered with the
/// inner factor, so any subset of the support again contains a single
/// dominant row.
struct DominantRow {
  double factor = 1e6;
};

/// Every supported entry has magnitude exactly `magnitude`, signs random.
struct IdenticalMagnitudes {
  double magnitude = 1.0;
};

/// Supported rows are i.i.d. standard normal.
struct GenericRandom {};

using CoefficientPattern = std::variant<DominantRow, IdenticalMagnitudes, GenericRandom>;

enum class Scenario { dominant_row, identical_magnitudes, generic_random, orthonormal };

std::string to_string(Scenario scenario);
Scenario scenario_from_string(const std::string& name);

/// A sensing problem (Phi, X, Y = Phi X) with its generation metadata.
struct MmvInstance {
  Matrix phi;
  Matrix x;
  Matrix y;
  Support support;
  std::uint64_t seed = 0;
  Scenario scenario = Scenario::generic_random;

  Index m() const { return phi.rows(); }
  Index n() const { return phi.cols(); }
  Index k() const { return x.cols(); }
};

/// m x n matrix with i.i.d. N(0, 1/m) entries (standard sensing ensemble).
Matrix gen_matrix_gaussian(Index m, Index n, std::uint64_t seed);

/// Gaussian ensemble with columns rescaled to unit l2 norm, for
/// coherence-style experiments.
Matrix gen_matrix_gaussian_unit(Index m, Index n, std::uint64_t seed);

/// m x n (n <= m) matrix with exactly orthonormal columns, from the QR of a
/// Gaussian matrix with the sign convention diag(R) >= 0.
Matrix gen_matrix_orthonormal(Index m, Index n, std::uint64_t seed);

/// n x K coefficient matrix whose nonzero rows are exactly `support`,
/// filled according to `pattern`.
Matrix gen_coefficients(Index n, Index k, const Support& support,
                        const CoefficientPattern& pattern, std::uint64_t seed);

/// Uniformly random size-s subset of {0, ..., n-1}.
Support random_support(Index n, Index s, std::uint64_t seed);

/// Computes y = phi * x and extracts the support (union of the per-column
/// supports of x).
MmvInstance assemble_instance(Matrix phi, Matrix x, std::uint64_t seed = 0,
                              Scenario scenario = Scenario::generic_random);

/// Columns of `a` indexed by `support`.
Matrix submatrix_columns(const Matrix& a, const Support& support);

/// Rows of `a` indexed by `support`.
Matrix submatrix_rows(const Matrix& a, const Support& support);

}  // namespace somp::model
