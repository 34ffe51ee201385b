// SPDX-License-Identifier: Apache-2.0

#include <somp/experiments.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <somp/io.hpp>
#include <somp/linalg.hpp>
#include <somp/rip.hpp>

namespace somp::experiments {

namespace {

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

model::Scenario scenario_tag(CaseKind kind) {
  switch (kind) {
    case CaseKind::dominant_row: return model::Scenario::dominant_row;
    case CaseKind::identical_magnitudes:
    case CaseKind::last_iteration: return model::Scenario::identical_magnitudes;
    case CaseKind::orthonormal: return model::Scenario::orthonormal;
    case CaseKind::soundness: return model::Scenario::generic_random;
  }
  throw DomainError("unknown case kind");
}

/// delta for one trial, per the configured source. Exact enumeration of the
/// full dictionary honors the subset budget; the support-restricted constant
/// is exact for the columns the bounds actually touch and never exceeds the
/// full-dictionary constant.
double measure_delta(const ExperimentSpec& spec, const model::MmvInstance& instance) {
  switch (spec.delta_source) {
    case bounds::DeltaSource::exact_ric:
      return rip::ric_exact(instance.phi, instance.support.size())
          .delta(instance.support.size());
    case bounds::DeltaSource::support_ric: {
      const Matrix phi_s = model::submatrix_columns(instance.phi, instance.support);
      return rip::ric_exact(phi_s, instance.support.size())
          .delta(instance.support.size());
    }
    case bounds::DeltaSource::hypothetical:
      throw DomainError("measure_delta called with a hypothetical source");
  }
  throw DomainError("unknown delta source");
}

}  // namespace

std::string to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::dominant_row: return "dominant_row";
    case CaseKind::identical_magnitudes: return "identical_magnitudes";
    case CaseKind::last_iteration: return "last_iteration";
    case CaseKind::orthonormal: return "orthonormal";
    case CaseKind::soundness: return "soundness";
  }
  throw DomainError("unknown case kind");
}

CaseKind case_kind_from_string(const std::string& name) {
  if (name == "dominant_row" || name == "case1") return CaseKind::dominant_row;
  if (name == "identical_magnitudes" || name == "case2") return CaseKind::identical_magnitudes;
  if (name == "last_iteration" || name == "case3") return CaseKind::last_iteration;
  if (name == "orthonormal" || name == "case4") return CaseKind::orthonormal;
  if (name == "soundness") return CaseKind::soundness;
  throw DomainError("unknown case kind: " + name);
}

void ExperimentSpec::validate() const {
  if (m < 1) throw DomainError("experiment spec: m must be >= 1");
  if (n < 1 || s < 1 || s > n) throw DomainError("experiment spec: need 1 <= s <= n");
  if (k < 1) throw DomainError("experiment spec: K must be >= 1");
  if (trials < 1) throw DomainError("experiment spec: trials must be >= 1");
  if (kind == CaseKind::orthonormal && n > m) {
    throw DomainError("experiment spec: the orthonormal case needs n <= m");
  }
  if (delta_source == bounds::DeltaSource::hypothetical) {
    if (delta_grid.empty()) {
      throw DomainError("experiment spec: hypothetical delta needs a non-empty grid");
    }
    for (double delta : delta_grid) {
      if (!(delta >= 0.0 && delta < 1.0)) {
        throw DomainError("experiment spec: grid deltas must lie in [0, 1)");
      }
    }
  }
}

model::MmvInstance make_instance(const ExperimentSpec& spec, std::uint64_t trial_seed) {
  const std::uint64_t phi_seed = model::Rng::split(trial_seed, 0);
  const std::uint64_t support_seed = model::Rng::split(trial_seed, 1);
  const std::uint64_t coeff_seed = model::Rng::split(trial_seed, 2);

  Matrix phi = spec.kind == CaseKind::orthonormal
                   ? model::gen_matrix_orthonormal(spec.m, spec.n, phi_seed)
                   : model::gen_matrix_gaussian(spec.m, spec.n, phi_seed);
  const model::Support support = model::random_support(spec.n, spec.s, support_seed);

  model::CoefficientPattern pattern = model::GenericRandom{};
  switch (spec.kind) {
    case CaseKind::dominant_row:
      pattern = model::DominantRow{spec.dominance_factor};
      break;
    case CaseKind::identical_magnitudes:
    case CaseKind::last_iteration:
      pattern = model::IdenticalMagnitudes{spec.magnitude};
      break;
    case CaseKind::orthonormal:
    case CaseKind::soundness:
      break;
  }
  Matrix x = model::gen_coefficients(spec.n, spec.k, support, pattern, coeff_seed);
  return model::assemble_instance(std::move(phi), std::move(x), trial_seed,
                                  scenario_tag(spec.kind));
}

CaseResult run_case(const ExperimentSpec& spec) {
  spec.validate();
  CaseResult result;
  result.spec = spec;
  result.summary.soundness_applicable =
      spec.delta_source != bounds::DeltaSource::hypothetical;

  std::vector<double> slack_rip;
  std::vector<double> slack_frobenius;
  std::vector<double> tightness;
  long ratio_defined = 0;
  long ratio_above_one = 0;

  for (int trial = 0; trial < spec.trials; ++trial) {
    const std::uint64_t trial_seed =
        model::Rng::split(spec.seed, static_cast<std::uint64_t>(trial));
    TrialResult trial_result;
    trial_result.trial_seed = trial_seed;
    try {
      const model::MmvInstance instance = make_instance(spec, trial_seed);

      std::vector<double> deltas;
      if (spec.delta_source == bounds::DeltaSource::hypothetical) {
        deltas = spec.delta_grid;
      } else {
        const double delta = measure_delta(spec, instance);
        if (delta >= 1.0) {
          trial_result.delta_out_of_range = true;
          ++result.summary.trials_delta_out_of_range;
          result.trials.push_back(std::move(trial_result));
          continue;
        }
        deltas.push_back(delta);
      }

      pursuit::PursuitConfig config;
      config.selection_norm = spec.selection_norm;
      config.max_iterations = spec.s;
      const pursuit::PursuitTrace trace = pursuit::somp(instance.y, instance.phi, config);
      const std::vector<bool> valid = trace.correct_before(instance.support);

      for (Index t = 0; t < trace.iterations(); ++t) {
        if (!valid[static_cast<std::size_t>(t)]) continue;
        for (double delta : deltas) {
          bounds::BoundReport report =
              bounds::bound_report(instance, trace, t, delta, spec.delta_source);
          if (result.summary.soundness_applicable) {
            if (report.slack_rip() < -kTol.soundness_slack) {
              result.summary.violations.push_back(
                  {trial_seed, t, "rip", report.slack_rip()});
            }
            if (report.slack_frobenius() < -kTol.soundness_slack) {
              result.summary.violations.push_back(
                  {trial_seed, t, "frobenius", report.slack_frobenius()});
            }
          }
          slack_rip.push_back(report.slack_rip());
          slack_frobenius.push_back(report.slack_frobenius());
          if (report.rip_bound > 0.0) tightness.push_back(report.exact / report.rip_bound);
          if (report.ratio_defined) {
            ++ratio_defined;
            if (report.ratio > 1.0) ++ratio_above_one;
          }
          trial_result.reports.push_back(std::move(report));
        }
      }
    } catch (const Error& err) {
      throw Error("trial seed " + std::to_string(trial_seed) + ": " + err.what());
    }
    result.summary.reports += static_cast<long>(trial_result.reports.size());
    result.trials.push_back(std::move(trial_result));
  }

  auto& summary = result.summary;
  summary.min_slack_rip =
      slack_rip.empty() ? 0.0 : *std::min_element(slack_rip.begin(), slack_rip.end());
  summary.median_slack_rip = median(slack_rip);
  summary.min_slack_frobenius =
      slack_frobenius.empty()
          ? 0.0
          : *std::min_element(slack_frobenius.begin(), slack_frobenius.end());
  summary.median_slack_frobenius = median(slack_frobenius);
  summary.fraction_ratio_above_one =
      ratio_defined == 0 ? 0.0
                         : static_cast<double>(ratio_above_one) /
                               static_cast<double>(ratio_defined);
  summary.tightness_min =
      tightness.empty() ? 0.0 : *std::min_element(tightness.begin(), tightness.end());
  summary.tightness_median = median(tightness);
  summary.tightness_max =
      tightness.empty() ? 0.0 : *std::max_element(tightness.begin(), tightness.end());
  return result;
}

void write_case_outputs(const CaseResult& result) {
  const auto& dir = result.spec.output_dir;
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);

  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "reports_%05zu.csv", i);
    io::write_reports_csv(dir / name, result.trials[i].reports);
  }

  const auto& summary = result.summary;
  io::write_summary_csv(
      dir / "summary.csv",
      {
          {"case", to_string(result.spec.kind)},
          {"m", std::to_string(result.spec.m)},
          {"n", std::to_string(result.spec.n)},
          {"K", std::to_string(result.spec.k)},
          {"s", std::to_string(result.spec.s)},
          {"trials", std::to_string(result.spec.trials)},
          {"seed", std::to_string(result.spec.seed)},
          {"delta_source", bounds::to_string(result.spec.delta_source)},
          {"reports", std::to_string(summary.reports)},
          {"soundness_applicable", summary.soundness_applicable ? "1" : "0"},
          {"violations", std::to_string(summary.violations.size())},
          {"trials_delta_out_of_range",
           std::to_string(summary.trials_delta_out_of_range)},
          {"min_slack_rip", io::format_double(summary.min_slack_rip)},
          {"median_slack_rip", io::format_double(summary.median_slack_rip)},
          {"min_slack_frobenius", io::format_double(summary.min_slack_frobenius)},
          {"median_slack_frobenius", io::format_double(summary.median_slack_frobenius)},
          {"fraction_ratio_above_one",
           io::format_double(summary.fraction_ratio_above_one)},
          {"tightness_min", io::format_double(summary.tightness_min)},
          {"tightness_median", io::format_double(summary.tightness_median)},
          {"tightness_max", io::format_double(summary.tightness_max)},
      });

  if (!summary.violations.empty()) {
    std::ofstream out(dir / "violations.csv");
    out << "trial_seed,t,bound,slack\n";
    for (const auto& violation : summary.violations) {
      out << violation.trial_seed << ',' << violation.t << ',' << violation.bound << ','
          << io::format_double(violation.slack) << '\n';
    }
  }
}

double identical_magnitude_ratio(Index k, Index jt_size, double delta) {
  if (k < 1 || jt_size < 1) throw DomainError("identical_magnitude_ratio: K, |J_t| >= 1");
  if (!(delta >= 0.0 && delta < 1.0)) throw RipViolationError(delta);
  const double root_j = std::sqrt(static_cast<double>(jt_size));
  return std::sqrt(static_cast<double>(k)) * (1.0 + delta) / (1.0 + root_j * delta);
}

RatioGridResult ratio_grid(const RatioGridSpec& spec) {
  if (spec.k_max < 1) throw DomainError("ratio_grid: k_max must be >= 1");
  for (double delta : spec.deltas) {
    if (!(delta >= 0.0 && delta < 1.0)) throw RipViolationError(delta);
  }
  RatioGridResult result;
  result.spec = spec;
  for (Index jt : spec.jt_sizes) {
    for (double delta : spec.deltas) {
      RatioCrossing crossing;
      crossing.jt_size = jt;
      crossing.delta = delta;
      const double root_j = std::sqrt(static_cast<double>(jt));
      crossing.k_threshold = std::pow((1.0 + root_j * delta) / (1.0 + delta), 2.0);
      for (Index k = 1; k <= spec.k_max; ++k) {
        const double r = identical_magnitude_ratio(k, jt, delta);
        result.rows.push_back({k, jt, delta, r});
        if (crossing.smallest_k == 0 && r >= 1.0) crossing.smallest_k = k;
      }
      result.crossings.push_back(crossing);
    }
  }
  return result;
}

void write_ratio_grid_outputs(const RatioGridResult& result) {
  const auto& dir = result.spec.output_dir;
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);

  {
    std::ofstream out(dir / "figure1.csv");
    out << "K,Jt_size,delta,r\n";
    for (const auto& row : result.rows) {
      out << row.k << ',' << row.jt_size << ',' << io::format_double(row.delta) << ','
          << io::format_double(row.r) << '\n';
    }
  }
  {
    std::ofstream out(dir / "crossings.csv");
    out << "Jt_size,delta,smallest_K,K_threshold\n";
    for (const auto& crossing : result.crossings) {
      out << crossing.jt_size << ',' << io::format_double(crossing.delta) << ','
          << crossing.smallest_k << ',' << io::format_double(crossing.k_threshold) << '\n';
    }
  }
  {
    std::ofstream out(dir / "figure1.gp");
    out << "# gnuplot script for the bound-ratio curves\n"
        << "set datafile separator ','\n"
        << "set xlabel 'K'\n"
        << "set ylabel 'r'\n"
        << "set key outside\n"
        << "plot \\\n";
    for (Index jt : result.spec.jt_sizes) {
      for (double delta : result.spec.deltas) {
        out << "  'figure1.csv' using 1:($2==" << jt << " && $3==" << io::format_double(delta)
            << " ? $4 : 1/0) with lines title '|J_t|=" << jt
            << ", delta=" << io::format_double(delta) << "', \\\n";
      }
    }
    out << "  1 with lines dashtype '-.' linecolor 'red' title 'r = 1'\n";
  }
}

}  // namespace somp::experiments
