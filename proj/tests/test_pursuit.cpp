// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <somp/io.hpp>
#include <somp/linalg.hpp>
#include <somp/model.hpp>
#include <somp/pursuit.hpp>

using somp::Index;
using somp::Lp;
using somp::Matrix;
using somp::Vector;
namespace model = somp::model;
namespace pursuit = somp::pursuit;
namespace linalg = somp::linalg;

namespace {

model::MmvInstance gaussian_instance(Index m, Index n, Index k, Index s,
                                     std::uint64_t seed) {
  const Matrix phi = model::gen_matrix_gaussian(m, n, model::Rng::split(seed, 0));
  const model::Support support = model::random_support(n, s, model::Rng::split(seed, 1));
  const Matrix x =
      model::gen_coefficients(n, k, support, model::GenericRandom{}, model::Rng::split(seed, 2));
  return model::assemble_instance(phi, x, seed);
}

pursuit::PursuitConfig config_for(Index s, Lp p = Lp::one) {
  pursuit::PursuitConfig config;
  config.selection_norm = p;
  config.max_iterations = s;
  return config;
}

// Plain single-vector orthogonal matching pursuit, written directly against
// Eigen as an independent reference (SVD-based solve, no shared code path).
std::vector<Index> reference_omp(const Vector& y, const Matrix& phi, Index s) {
  std::vector<Index> picked;
  Vector residual = y;
  for (Index t = 0; t < s; ++t) {
    const Vector scores = (phi.transpose() * residual).cwiseAbs();
    Index best = 0;
    for (Index j = 1; j < scores.size(); ++j) {
      if (scores(j) > scores(best)) best = j;
    }
    picked.push_back(best);
    std::vector<Index> sorted = picked;
    std::sort(sorted.begin(), sorted.end());
    const Matrix sub = phi(Eigen::all, sorted);
    const Vector solution =
        sub.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
    residual = y - sub * solution;
  }
  return picked;
}

}  // namespace

TEST_CASE("selection metric definition and cross-norm agreement") {
  const auto instance = gaussian_instance(16, 24, 3, 4, 5);

  const Vector zeros =
      pursuit::selection_metric(Matrix::Zero(16, 3), instance.phi, Lp::one);
  CHECK(zeros.norm() == 0.0);

  // All l_p norms agree on a single correlation value.
  const auto smv = gaussian_instance(16, 24, 1, 4, 6);
  const Vector m1 = pursuit::selection_metric(smv.y, smv.phi, Lp::one);
  const Vector m2 = pursuit::selection_metric(smv.y, smv.phi, Lp::two);
  const Vector minf = pursuit::selection_metric(smv.y, smv.phi, Lp::inf);
  CHECK((m1 - m2).norm() <= 1e-14);
  CHECK((m1 - minf).norm() <= 1e-14);

  // Restricted to the support, the l1 metric maximum is the inf->inf norm of
  // the correct-atom correlation block.
  const Vector metric = pursuit::selection_metric(instance.y, instance.phi, Lp::one);
  double max_on_support = 0.0;
  for (Index j : instance.support.indices()) {
    max_on_support = std::max(max_on_support, metric(j));
  }
  const Matrix phi_s = model::submatrix_columns(instance.phi, instance.support);
  CHECK(max_on_support ==
        doctest::Approx(linalg::norm_inf_to_inf(Matrix(phi_s.transpose() * instance.y)))
            .epsilon(1e-13));
}

TEST_CASE("residual update projects away the selected span") {
  const Matrix phi = model::gen_matrix_gaussian(6, 6, 1);
  const Matrix y = model::gen_matrix_gaussian(6, 2, 2);
  const model::Support all({0, 1, 2, 3, 4, 5});
  CHECK(pursuit::residual_update(y, phi, all).norm() <= 1e-10 * y.norm());

  // Y already orthogonal to the selected atoms stays untouched.
  const Matrix ortho = model::gen_matrix_orthonormal(8, 5, 3);
  const Matrix y_perp = ortho.rightCols(2);
  const Matrix kept = pursuit::residual_update(y_perp, ortho, model::Support({0, 1, 2}));
  CHECK((kept - y_perp).norm() <= 1e-12);

  const auto instance = gaussian_instance(16, 24, 3, 4, 7);
  const model::Support some({2, 9});
  const Matrix residual = pursuit::residual_update(instance.y, instance.phi, some);
  const Matrix phi_some = model::submatrix_columns(instance.phi, some);
  CHECK((phi_some.transpose() * residual).norm() <= 1e-10);

  CHECK_THROWS_AS(pursuit::residual_update(instance.y, instance.phi, model::Support{}),
                  somp::DomainError);
}

TEST_CASE("somp recovers an orthonormal-dictionary support exactly") {
  const Index m = 12, n = 8, k = 4;
  const Matrix phi = model::gen_matrix_orthonormal(m, n, 11);
  const model::Support support({1, 4, 6, 7});
  // One nonzero per column, jointly covering the support.
  Matrix x = Matrix::Zero(n, k);
  x(1, 0) = 2.0;
  x(4, 1) = -1.5;
  x(6, 2) = 1.0;
  x(7, 3) = 3.0;
  const auto instance = model::assemble_instance(phi, x);
  REQUIRE(instance.support == support);

  const auto trace = pursuit::somp(instance.y, instance.phi, config_for(4));
  CHECK(trace.final_support == support);
  CHECK(trace.records.back().residual_frobenius <= 1e-12);
}

TEST_CASE("somp trace invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto instance = gaussian_instance(32, 64, 4, 5, seed);
    const auto trace = pursuit::somp(instance.y, instance.phi, config_for(5));

    REQUIRE(trace.iterations() == 5);
    CHECK(trace.final_support.size() == 5);
    CHECK(trace.residuals.size() == 6);

    double previous = instance.y.norm();
    for (const auto& record : trace.records) {
      // The selected atom attains the metric maximum, lowest index wins ties.
      Index best = 0;
      for (Index j = 1; j < record.metric_values.size(); ++j) {
        if (record.metric_values(j) > record.metric_values(best)) best = j;
      }
      CHECK(best == record.selected_atom);
      CHECK(record.residual_frobenius <= previous + 1e-12);
      previous = record.residual_frobenius;
    }

    // Step-to-step orthogonality: selected atoms have zero metric afterwards.
    for (std::size_t t = 0; t < trace.records.size(); ++t) {
      const Matrix phi_st =
          model::submatrix_columns(instance.phi, trace.records[t].support_after);
      CHECK((phi_st.transpose() * trace.residuals[t + 1]).norm() <= 1e-10);
      if (t + 1 < trace.records.size()) {
        const auto& next_metric = trace.records[t + 1].metric_values;
        for (Index j : trace.records[t].support_after.indices()) {
          CHECK(next_metric(j) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("somp recovers random gaussian supports on most seeds") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto instance = gaussian_instance(32, 64, 4, 5, seed);
    const auto trace = pursuit::somp(instance.y, instance.phi, config_for(5));
    if (trace.final_support == instance.support) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("somp for K = 1 matches a standalone reference and all norms agree") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto instance = gaussian_instance(24, 48, 1, 4, seed);
    const auto trace1 = pursuit::somp(instance.y, instance.phi, config_for(4, Lp::one));
    const auto trace2 = pursuit::somp(instance.y, instance.phi, config_for(4, Lp::two));
    const auto traceinf = pursuit::somp(instance.y, instance.phi, config_for(4, Lp::inf));
    const auto reference = reference_omp(instance.y.col(0), instance.phi, 4);
    for (Index t = 0; t < 4; ++t) {
      CHECK(trace1.records[t].selected_atom == reference[static_cast<std::size_t>(t)]);
      CHECK(trace2.records[t].selected_atom == trace1.records[t].selected_atom);
      CHECK(traceinf.records[t].selected_atom == trace1.records[t].selected_atom);
    }
  }
}

TEST_CASE("permuting measurement columns leaves the selection unchanged") {
  const auto instance = gaussian_instance(20, 40, 5, 4, 77);
  const auto trace = pursuit::somp(instance.y, instance.phi, config_for(4));

  Matrix permuted(instance.y.rows(), instance.y.cols());
  const std::vector<Index> order = {3, 0, 4, 1, 2};
  for (Index c = 0; c < 5; ++c) permuted.col(c) = instance.y.col(order[c]);
  const auto trace_permuted = pursuit::somp(permuted, instance.phi, config_for(4));
  for (Index t = 0; t < 4; ++t) {
    CHECK(trace.records[t].selected_atom == trace_permuted.records[t].selected_atom);
  }
}

TEST_CASE("correctness flags against a known support") {
  pursuit::PursuitTrace trace;
  for (Index atom : {2, 5, 6}) {
    pursuit::IterationRecord record;
    record.selected_atom = atom;
    trace.records.push_back(record);
  }
  const model::Support truth({2, 6});
  // S_0 = {} and S_1 = {2} are proper subsets; S_2 = {2, 5} is not.
  CHECK(trace.correct_before(truth) == std::vector<bool>{true, true, false});
  CHECK(trace.correct_so_far(truth) == std::vector<bool>{true, false, false});

  // A fully correct run keeps correct_so_far true but correct_before turns
  // false once S_t stops being proper.
  pursuit::PursuitTrace full;
  for (Index atom : {6, 2}) {
    pursuit::IterationRecord record;
    record.selected_atom = atom;
    full.records.push_back(record);
  }
  CHECK(full.correct_before(truth) == std::vector<bool>{true, true});
  CHECK(full.correct_so_far(truth) == std::vector<bool>{true, true});

  pursuit::PursuitTrace over;
  for (Index atom : {6, 2, 0}) {
    pursuit::IterationRecord record;
    record.selected_atom = atom;
    over.records.push_back(record);
  }
  CHECK(over.correct_before(truth) == std::vector<bool>{true, true, false});
}

TEST_CASE("degenerate input raises the re-selection diagnostic") {
  // Zero measurements: every metric is zero, the argmax stays at atom 0 and
  // the second iteration would re-select it.
  const Matrix phi = model::gen_matrix_gaussian(6, 10, 3);
  const Matrix y = Matrix::Zero(6, 2);
  try {
    pursuit::somp(y, phi, config_for(3));
    FAIL("expected PursuitError");
  } catch (const pursuit::PursuitError& err) {
    CHECK(err.partial.records.size() == 1);
  }
}

TEST_CASE("config validation") {
  const auto instance = gaussian_instance(8, 6, 2, 2, 1);
  CHECK_THROWS_AS(pursuit::somp(instance.y, instance.phi, config_for(0)),
                  somp::DomainError);
  CHECK_THROWS_AS(pursuit::somp(instance.y, instance.phi, config_for(7)),
                  somp::DomainError);
  CHECK_THROWS_AS(pursuit::somp(Matrix::Zero(5, 1), instance.phi, config_for(1)),
                  somp::DimensionError);
}

TEST_CASE("trace csv layout") {
  const auto instance = gaussian_instance(16, 20, 2, 3, 55);
  const auto trace = pursuit::somp(instance.y, instance.phi, config_for(3));
  const auto path = std::filesystem::temp_directory_path() / "somp_trace_test.csv";
  somp::io::write_trace_csv(path, trace, instance.support);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,j_t,metric_max_correct,metric_max_incorrect,residual_frobenius,correct_so_far");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 3);
  std::filesystem::remove(path);
}
