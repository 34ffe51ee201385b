// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <somp/bounds.hpp>
#include <somp/model.hpp>
#include <somp/pursuit.hpp>
#include <somp/types.hpp>

// Scenario orchestration: seeded campaigns that generate instances, run the
// pursuit, evaluate both lower bounds at every iteration where only correct
// atoms have been selected, and emit CSV reports plus a summary.

namespace somp::experiments {

/// The four benchmark scenarios plus the randomized soundness campaign.
enum class CaseKind {
  dominant_row,          // one coefficient row overwhelms the rest
  identical_magnitudes,  // all supported entries share one magnitude
  last_iteration,        // focus on the |J_t| = 1 iteration
  orthonormal,           // orthonormal dictionary (delta = 0)
  soundness,             // generic random instances, inequality certification
};

std::string to_string(CaseKind kind);
CaseKind case_kind_from_string(const std::string& name);

struct ExperimentSpec {
  CaseKind kind = CaseKind::soundness;
  Index m = 32;
  Index n = 64;
  Index k = 4;
  Index s = 5;
  int trials = 100;
  std::uint64_t seed = 0;
  bounds::DeltaSource delta_source = bounds::DeltaSource::support_ric;
  std::vector<double> delta_grid;  // used when delta_source is hypothetical
  std::filesystem::path output_dir;  // empty: no files are written
  double dominance_factor = 1e6;
  double magnitude = 1.0;
  Lp selection_norm = Lp::one;

  void validate() const;
};

/// Deterministic instance for one trial of a campaign.
model::MmvInstance make_instance(const ExperimentSpec& spec, std::uint64_t trial_seed);

struct TrialResult {
  std::uint64_t trial_seed = 0;
  std::vector<bounds::BoundReport> reports;
  /// The measured delta was >= 1, so the bounds' hypothesis failed and the
  /// trial produced no reports.
  bool delta_out_of_range = false;
};

struct Violation {
  std::uint64_t trial_seed = 0;
  Index t = 0;
  std::string bound;
  double slack = 0.0;
};

struct CaseSummary {
  long reports = 0;
  std::vector<Violation> violations;
  long trials_delta_out_of_range = 0;
  /// Violations are only meaningful when delta is measured, not hypothesized.
  bool soundness_applicable = true;
  double min_slack_rip = 0.0;
  double median_slack_rip = 0.0;
  double min_slack_frobenius = 0.0;
  double median_slack_frobenius = 0.0;
  double fraction_ratio_above_one = 0.0;
  double tightness_min = 0.0;     // exact / rip bound
  double tightness_median = 0.0;
  double tightness_max = 0.0;
};

struct CaseResult {
  ExperimentSpec spec;
  std::vector<TrialResult> trials;
  CaseSummary summary;
};

/// Runs the campaign. Reports cover every iteration t with S_t a proper
/// subset of the true support; with a hypothetical delta grid each such
/// iteration yields one report per grid value. Errors from any stage are
/// rethrown with the trial seed attached.
CaseResult run_case(const ExperimentSpec& spec);

/// Writes reports_#####.csv per trial plus summary.csv (and violations.csv
/// when any) under spec.output_dir. Byte-identical across reruns.
void write_case_outputs(const CaseResult& result);

/// Closed-form ratio of the two bounds under the identical-magnitude
/// pattern: sqrt(K) (1 + delta) / (1 + sqrt(|J_t|) delta).
double identical_magnitude_ratio(Index k, Index jt_size, double delta);

struct RatioGridSpec {
  Index k_max = 64;
  std::vector<Index> jt_sizes = {1, 2, 4, 9, 16};
  std::vector<double> deltas = {0.1, 0.3, 0.5, 0.7};
  std::filesystem::path output_dir;
};

struct RatioGridRow {
  Index k = 0;
  Index jt_size = 0;
  double delta = 0.0;
  double r = 0.0;
};

struct RatioCrossing {
  Index jt_size = 0;
  double delta = 0.0;
  /// Smallest K in [1, k_max] with r >= 1; 0 when the grid never crosses.
  Index smallest_k = 0;
  /// Closed-form crossing point ((1 + sqrt(|J_t|) delta) / (1 + delta))^2.
  double k_threshold = 0.0;
};

struct RatioGridResult {
  RatioGridSpec spec;
  std::vector<RatioGridRow> rows;
  std::vector<RatioCrossing> crossings;
};

/// Evaluates the closed-form ratio over the (K, |J_t|, delta) grid and finds
/// where each curve crosses r = 1.
RatioGridResult ratio_grid(const RatioGridSpec& spec);

/// Writes figure1.csv, crossings.csv and a gnuplot script figure1.gp.
void write_ratio_grid_outputs(const RatioGridResult& result);

}  // namespace somp::experiments
