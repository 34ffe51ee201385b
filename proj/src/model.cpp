// SPDX-License-Identifier: Apache-2.0

#include <somp/model.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <somp/linalg.hpp>

namespace somp::model {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Support::Support(std::vector<Index> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) {
      throw DomainError("support indices must be non-negative");
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw DomainError("support indices must be strictly increasing");
    }
  }
}

bool Support::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

bool Support::subset_of(const Support& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

Support Support::complement_within(const Support& other) const {
  std::vector<Index> out;
  std::set_difference(other.indices_.begin(), other.indices_.end(),
                      indices_.begin(), indices_.end(), std::back_inserter(out));
  return Support(std::move(out));
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  engine_.seed(splitmix64(state));
}

std::uint64_t Rng::split(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t base = splitmix64(state);
  state = base ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  return splitmix64(state);
}

double Rng::uniform() {
  // 53-bit mantissa uniform in [0, 1); avoids the unspecified
  // std::uniform_real_distribution mapping.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::int64_t Rng::below(std::int64_t n) {
  if (n <= 0) throw DomainError("Rng::below requires n >= 1");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return static_cast<std::int64_t>(draw % bound);
}

double Rng::sign() { return (engine_() & 1ULL) ? 1.0 : -1.0; }

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::dominant_row: return "dominant_row";
    case Scenario::identical_magnitudes: return "identical_magnitudes";
    case Scenario::generic_random: return "generic_random";
    case Scenario::orthonormal: return "orthonormal";
  }
  throw DomainError("unknown scenario");
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "dominant_row") return Scenario::dominant_row;
  if (name == "identical_magnitudes") return Scenario::identical_magnitudes;
  if (name == "generic_random") return Scenario::generic_random;
  if (name == "orthonormal") return Scenario::orthonormal;
  throw DomainError("unknown scenario name: " + name);
}

Matrix gen_matrix_gaussian(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw DimensionError("gen_matrix_gaussian requires m, n >= 1");
  Rng rng(seed);
  Matrix phi(m, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      phi(i, j) = scale * rng.normal();
    }
  }
  return phi;
}

Matrix gen_matrix_gaussian_unit(Index m, Index n, std::uint64_t seed) {
  Matrix phi = gen_matrix_gaussian(m, n, seed);
  phi.colwise().normalize();
  return phi;
}

Matrix gen_matrix_orthonormal(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw DimensionError("gen_matrix_orthonormal requires m, n >= 1");
  if (n > m) {
    throw DimensionError("gen_matrix_orthonormal: cannot fit " + std::to_string(n) +
                         " orthonormal columns in dimension " + std::to_string(m));
  }
  const Matrix g = gen_matrix_gaussian(m, n, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(m, n);
  const Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

namespace {

struct CoefficientFiller {
  Index n;
  Index k;
  const Support& support;
  Rng& rng;

  Matrix operator()(const GenericRandom&) const {
    Matrix x = Matrix::Zero(n, k);
    for (Index j : support.indices()) {
      for (Index c = 0; c < k; ++c) x(j, c) = rng.normal();
    }
    return x;
  }

  Matrix operator()(const IdenticalMagnitudes& pattern) const {
    if (pattern.magnitude <= 0) {
      throw DomainError("identical-magnitude pattern requires magnitude > 0");
    }
    Matrix x = Matrix::Zero(n, k);
    for (Index j : support.indices()) {
      for (Index c = 0; c < k; ++c) x(j, c) = rng.sign() * pattern.magnitude;
    }
    return x;
  }

  Matrix operator()(const DominantRow& pattern) const {
    if (pattern.factor < 1e3) {
      throw DomainError("dominant-row pattern requires factor >= 1e3");
    }
    // Dominance order: a random permutation of the support, weakest last.
    // The designated row (first in the order) uses the requested factor; the
    // rows beneath it chain with the small inner factor so that the weakest
    // row still sits far above the roundoff floor of the strongest.
    std::vector<Index> order(support.indices());
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1],
                order[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(i)))]);
    }
    Matrix x = Matrix::Zero(n, k);
    double weaker_l1 = 0.0;
    for (std::size_t rank = order.size(); rank-- > 0;) {
      const double factor = rank == 0 ? pattern.factor : kDominantRowInnerFactor;
      const double base = (weaker_l1 == 0.0) ? 1.0 : factor * weaker_l1;
      double row_l1 = 0.0;
      for (Index c = 0; c < k; ++c) {
        const double magnitude = base * (1.0 + rng.uniform());
        x(order[rank], c) = rng.sign() * magnitude;
        row_l1 += magnitude;
      }
      weaker_l1 += row_l1;
    }
    return x;
  }
};

}  // namespace

Matrix gen_coefficients(Index n, Index k, const Support& support,
                        const CoefficientPattern& pattern, std::uint64_t seed) {
  if (n < 1 || k < 1) throw DimensionError("gen_coefficients requires n, k >= 1");
  if (support.empty()) throw DomainError("gen_coefficients requires a non-empty support");
  if (support.indices().back() >= n) {
    throw DomainError("support index " + std::to_string(support.indices().back()) +
                      " is out of range for n = " + std::to_string(n));
  }
  Rng rng(seed);
  return std::visit(CoefficientFiller{n, k, support, rng}, pattern);
}

Support random_support(Index n, Index s, std::uint64_t seed) {
  if (s < 1 || s > n) throw DomainError("random_support requires 1 <= s <= n");
  Rng rng(seed);
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < s; ++i) {
    const auto j = i + rng.below(static_cast<std::int64_t>(n - i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  std::vector<Index> picked(pool.begin(), pool.begin() + s);
  std::sort(picked.begin(), picked.end());
  return Support(std::move(picked));
}

MmvInstance assemble_instance(Matrix phi, Matrix x, std::uint64_t seed, Scenario scenario) {
  if (phi.cols() != x.rows()) {
    throw DimensionError("assemble_instance: phi has " + std::to_string(phi.cols()) +
                         " columns but x has " + std::to_string(x.rows()) + " rows");
  }
  linalg::ensure_finite(phi, "assemble_instance phi");
  linalg::ensure_finite(x, "assemble_instance x");
  std::vector<Index> rows;
  for (Index j = 0; j < x.rows(); ++j) {
    if ((x.row(j).array() != 0.0).any()) rows.push_back(j);
  }
  MmvInstance instance;
  instance.y = phi * x;
  instance.phi = std::move(phi);
  instance.x = std::move(x);
  instance.support = Support(std::move(rows));
  instance.seed = seed;
  instance.scenario = scenario;
  return instance;
}

Matrix submatrix_columns(const Matrix& a, const Support& support) {
  if (!support.empty() && support.indices().back() >= a.cols()) {
    throw DimensionError("submatrix_columns: support exceeds column count");
  }
  return a(Eigen::all, support.indices());
}

Matrix submatrix_rows(const Matrix& a, const Support& support) {
  if (!support.empty() && support.indices().back() >= a.rows()) {
    throw DimensionError("submatrix_rows: support exceeds row count");
  }
  return a(support.indices(), Eigen::all);
}

}  // namespace somp::model
