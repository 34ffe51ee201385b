// SPDX-License-Identifier: Apache-2.0

// Experiment CLI: generates sensing instances, runs the pursuit, certifies
// the correlation lower bounds, computes exact restricted isometry
// constants, and tabulates the closed-form bound-ratio grid.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <somp/experiments.hpp>
#include <somp/io.hpp>
#include <somp/rip.hpp>

namespace {

using somp::Index;

struct CliOptions {
  somp::experiments::ExperimentSpec spec;
  std::vector<Index> k_values;  // soundness runs one campaign per K
  std::string delta_source = "support";
  std::vector<double> delta_grid;
  std::string selection_norm = "1";
  std::string out;
};

somp::Lp parse_norm(const std::string& name) {
  if (name == "1") return somp::Lp::one;
  if (name == "2") return somp::Lp::two;
  if (name == "inf") return somp::Lp::inf;
  throw somp::DomainError("selection norm must be one of 1, 2, inf");
}

void finalize_spec(CliOptions& options) {
  options.spec.delta_source = somp::bounds::delta_source_from_string(options.delta_source);
  options.spec.delta_grid = options.delta_grid;
  options.spec.selection_norm = parse_norm(options.selection_norm);
  options.spec.output_dir = options.out;
}

void print_case_summary(const somp::experiments::CaseResult& result, const std::string& label) {
  const auto& summary = result.summary;
  std::cout << label << ": trials=" << result.spec.trials << " reports=" << summary.reports
            << " violations=" << summary.violations.size()
            << " min_slack_rip=" << somp::io::format_double(summary.min_slack_rip)
            << " min_slack_frob=" << somp::io::format_double(summary.min_slack_frobenius)
            << " frac_ratio_gt_1="
            << somp::io::format_double(summary.fraction_ratio_above_one) << '\n';
  for (const auto& violation : summary.violations) {
    std::cout << "  violation: seed=" << violation.trial_seed << " t=" << violation.t
              << " bound=" << violation.bound
              << " slack=" << somp::io::format_double(violation.slack) << '\n';
  }
}

int run_single_case(somp::experiments::ExperimentSpec spec, const std::string& label) {
  const auto result = somp::experiments::run_case(spec);
  somp::experiments::write_case_outputs(result);
  print_case_summary(result, label);
  return result.summary.violations.empty() ? 0 : 1;
}

int run_soundness(const CliOptions& options) {
  std::vector<Index> ks = options.k_values.empty() ? std::vector<Index>{1, 4, 16}
                                                   : options.k_values;
  int status = 0;
  for (Index k : ks) {
    somp::experiments::ExperimentSpec spec = options.spec;
    spec.kind = somp::experiments::CaseKind::soundness;
    spec.k = k;
    if (!options.out.empty()) {
      spec.output_dir = std::filesystem::path(options.out) / ("K" + std::to_string(k));
    }
    status |= run_single_case(spec, "soundness K=" + std::to_string(k));
  }
  return status;
}

int run_ric(const std::string& phi_file, Index m, Index n, std::uint64_t seed, Index s_max,
            const std::string& out) {
  const somp::Matrix phi = phi_file.empty()
                               ? somp::model::gen_matrix_gaussian(m, n, seed)
                               : somp::io::read_matrix(phi_file);
  const auto table = somp::rip::ric_exact(phi, s_max);
  for (Index s = 1; s <= table.max_order(); ++s) {
    std::cout << "delta_" << s << " = " << somp::io::format_double(table.delta(s))
              << " (" << somp::rip::to_string(table.side(s)) << " side";
    if (!table.rip_holds(s)) std::cout << ", >= 1: recovery bounds inapplicable";
    std::cout << ")\n";
  }
  if (!out.empty()) {
    somp::io::write_ric_csv(std::filesystem::path(out) / "ric.csv", table);
  }
  return 0;
}

int run_figure_grid(const somp::experiments::RatioGridSpec& spec) {
  const auto result = somp::experiments::ratio_grid(spec);
  somp::experiments::write_ratio_grid_outputs(result);
  for (const auto& crossing : result.crossings) {
    std::cout << "|J_t|=" << crossing.jt_size
              << " delta=" << somp::io::format_double(crossing.delta) << ": r >= 1 from K="
              << crossing.smallest_k
              << " (threshold " << somp::io::format_double(crossing.k_threshold) << ")\n";
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

/// key=value configuration mirroring the experiment spec; '#' starts a
/// comment. Keys: scenario, m, n, K, s, trials, seed, delta_source,
/// delta_grid, out, factor, mu, p, k_max, jt_sizes.
int run_from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw somp::Error("cannot open config file " + path);
  std::map<std::string, std::string> config;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string text) {
      const auto first = text.find_first_not_of(" \t\r");
      const auto last = text.find_last_not_of(" \t\r");
      return first == std::string::npos ? std::string{}
                                        : text.substr(first, last - first + 1);
    };
    config[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!config.count("scenario")) {
    throw somp::DomainError("config file needs a scenario= entry");
  }
  const std::string scenario = config.at("scenario");

  if (scenario == "figure1") {
    somp::experiments::RatioGridSpec spec;
    if (config.count("k_max")) spec.k_max = std::stoll(config.at("k_max"));
    if (config.count("jt_sizes")) {
      spec.jt_sizes.clear();
      for (const auto& item : split_list(config.at("jt_sizes"))) {
        spec.jt_sizes.push_back(std::stoll(item));
      }
    }
    if (config.count("delta_grid")) {
      spec.deltas.clear();
      for (const auto& item : split_list(config.at("delta_grid"))) {
        spec.deltas.push_back(std::stod(item));
      }
    }
    if (config.count("out")) spec.output_dir = config.at("out");
    return run_figure_grid(spec);
  }
  if (scenario == "ric") {
    return run_ric(config.count("phi") ? config.at("phi") : "",
                   config.count("m") ? std::stoll(config.at("m")) : 8,
                   config.count("n") ? std::stoll(config.at("n")) : 12,
                   config.count("seed") ? std::stoull(config.at("seed")) : 0,
                   config.count("s") ? std::stoll(config.at("s")) : 4,
                   config.count("out") ? config.at("out") : "");
  }

  CliOptions options;
  options.spec.kind = somp::experiments::case_kind_from_string(scenario);
  if (config.count("m")) options.spec.m = std::stoll(config.at("m"));
  if (config.count("n")) options.spec.n = std::stoll(config.at("n"));
  if (config.count("s")) options.spec.s = std::stoll(config.at("s"));
  if (config.count("trials")) options.spec.trials = std::stoi(config.at("trials"));
  if (config.count("seed")) options.spec.seed = std::stoull(config.at("seed"));
  if (config.count("factor")) options.spec.dominance_factor = std::stod(config.at("factor"));
  if (config.count("mu")) options.spec.magnitude = std::stod(config.at("mu"));
  if (config.count("delta_source")) options.delta_source = config.at("delta_source");
  if (config.count("delta_grid")) {
    for (const auto& item : split_list(config.at("delta_grid"))) {
      options.delta_grid.push_back(std::stod(item));
    }
  }
  if (config.count("p")) options.selection_norm = config.at("p");
  if (config.count("out")) options.out = config.at("out");
  if (config.count("K")) {
    for (const auto& item : split_list(config.at("K"))) {
      options.k_values.push_back(std::stoll(item));
    }
  }
  finalize_spec(options);
  if (scenario == "soundness") return run_soundness(options);
  if (!options.k_values.empty()) options.spec.k = options.k_values.front();
  options.spec.output_dir = options.out;
  return run_single_case(options.spec, scenario);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint sparse recovery lab: SOMP/OMP, exact restricted isometry "
               "constants, and correlation lower-bound certification"};
  app.require_subcommand(0, 1);

  std::string config_file;
  app.add_option("--config", config_file,
                 "key=value experiment file (alternative to a subcommand)");

  CliOptions options;
  std::string phi_file;
  somp::experiments::RatioGridSpec grid_spec;

  auto add_common = [&options](CLI::App* cmd, bool multi_k) {
    cmd->add_option("--m", options.spec.m, "measurement dimension");
    cmd->add_option("--n", options.spec.n, "dictionary size");
    if (multi_k) {
      cmd->add_option("--K", options.k_values, "measurement vector counts")
          ->delimiter(',');
    } else {
      cmd->add_option("--K", options.spec.k, "measurement vector count");
    }
    cmd->add_option("--s", options.spec.s, "sparsity / pursuit iterations");
    cmd->add_option("--trials", options.spec.trials, "number of trials");
    cmd->add_option("--seed", options.spec.seed, "campaign seed");
    cmd->add_option("--delta-source", options.delta_source,
                    "delta source: exact, support, or grid");
    cmd->add_option("--delta-grid", options.delta_grid,
                    "hypothetical delta values (with --delta-source grid)")
        ->delimiter(',');
    cmd->add_option("--p", options.selection_norm, "selection norm: 1, 2, inf");
    cmd->add_option("--out", options.out, "output directory for CSV files");
  };

  auto* case1 = app.add_subcommand("case1", "dominant coefficient row scenario");
  add_common(case1, false);
  case1->add_option("--factor", options.spec.dominance_factor, "dominance factor (>= 1e3)");
  auto* case2 = app.add_subcommand("case2", "identical-magnitude coefficients scenario");
  add_common(case2, false);
  case2->add_option("--mu", options.spec.magnitude, "coefficient magnitude");
  auto* case3 = app.add_subcommand("case3", "last-iteration scenario (|J_t| = 1)");
  add_common(case3, false);
  case3->add_option("--mu", options.spec.magnitude, "coefficient magnitude");
  auto* case4 = app.add_subcommand("case4", "orthonormal dictionary scenario (delta = 0)");
  add_common(case4, false);
  auto* soundness =
      app.add_subcommand("soundness", "randomized certification of both lower bounds");
  add_common(soundness, true);

  auto* figure1 =
      app.add_subcommand("figure1", "closed-form bound-ratio grid over (K, |J_t|, delta)");
  figure1->add_option("--K-max", grid_spec.k_max, "largest K in the grid");
  figure1->add_option("--jt", grid_spec.jt_sizes, "|J_t| values")->delimiter(',');
  figure1->add_option("--delta-grid", grid_spec.deltas, "delta values")->delimiter(',');
  std::string grid_out;
  figure1->add_option("--out", grid_out, "output directory");

  auto* ric = app.add_subcommand("ric", "exact restricted isometry constants");
  ric->add_option("--phi", phi_file, "matrix file ('rows cols' header + rows)");
  ric->add_option("--m", options.spec.m, "rows of a generated Gaussian matrix");
  ric->add_option("--n", options.spec.n, "columns of a generated Gaussian matrix");
  ric->add_option("--seed", options.spec.seed, "generation seed");
  ric->add_option("--s", options.spec.s, "largest order to compute");
  ric->add_option("--out", options.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_file.empty()) return run_from_config(config_file);
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return 0;
    }
    finalize_spec(options);
    using somp::experiments::CaseKind;
    if (case1->parsed()) {
      options.spec.kind = CaseKind::dominant_row;
      return run_single_case(options.spec, "case1");
    }
    if (case2->parsed()) {
      options.spec.kind = CaseKind::identical_magnitudes;
      return run_single_case(options.spec, "case2");
    }
    if (case3->parsed()) {
      options.spec.kind = CaseKind::last_iteration;
      return run_single_case(options.spec, "case3");
    }
    if (case4->parsed()) {
      options.spec.kind = CaseKind::orthonormal;
      return run_single_case(options.spec, "case4");
    }
    if (soundness->parsed()) return run_soundness(options);
    if (figure1->parsed()) {
      grid_spec.output_dir = grid_out;
      return run_figure_grid(grid_spec);
    }
    if (ric->parsed()) {
      return run_ric(phi_file, options.spec.m, options.spec.n, options.spec.seed,
                     options.spec.s, options.out);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
