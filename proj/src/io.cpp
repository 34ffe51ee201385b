// SPDX-License-Identifier: Apache-2.0

#include <somp/io.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <somp/linalg.hpp>

namespace somp::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_matrix(const std::filesystem::path& path, const Matrix& a) {
  auto out = open_for_write(path);
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

Matrix read_matrix(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  Index rows = -1;
  Index cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error("malformed matrix header in " + path.string());
  }
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (!(in >> a(i, j))) {
        throw Error("malformed matrix entry at (" + std::to_string(i) + ", " +
                    std::to_string(j) + ") in " + path.string());
      }
    }
  }
  linalg::ensure_finite(a, "matrix read from " + path.string());
  return a;
}

void write_instance(const std::filesystem::path& dir, const model::MmvInstance& instance) {
  std::filesystem::create_directories(dir);
  write_matrix(dir / "phi.txt", instance.phi);
  write_matrix(dir / "x.txt", instance.x);
  write_matrix(dir / "y.txt", instance.y);
  auto meta = open_for_write(dir / "meta.txt");
  meta << "m=" << instance.m() << '\n'
       << "n=" << instance.n() << '\n'
       << "K=" << instance.k() << '\n'
       << "s=" << instance.support.size() << '\n'
       << "seed=" << instance.seed << '\n'
       << "scenario=" << model::to_string(instance.scenario) << '\n'
       << "rng=" << model::Rng::kAlgorithm << '\n';
}

model::MmvInstance read_instance(const std::filesystem::path& dir) {
  Matrix phi = read_matrix(dir / "phi.txt");
  Matrix x = read_matrix(dir / "x.txt");
  const Matrix y = read_matrix(dir / "y.txt");

  std::map<std::string, std::string> meta;
  auto in = open_for_read(dir / "meta.txt");
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    meta[line.substr(0, eq)] = line.substr(eq + 1);
  }

  model::MmvInstance instance = model::assemble_instance(
      std::move(phi), std::move(x), meta.count("seed") ? std::stoull(meta.at("seed")) : 0,
      meta.count("scenario") ? model::scenario_from_string(meta.at("scenario"))
                             : model::Scenario::generic_random);
  if ((instance.y - y).norm() > 1e-12 * std::max(1.0, y.norm())) {
    throw Error("instance in " + dir.string() + " violates y = phi * x");
  }
  return instance;
}

void write_trace_csv(const std::filesystem::path& path, const pursuit::PursuitTrace& trace,
                     const model::Support& truth) {
  auto out = open_for_write(path);
  out << "t,j_t,metric_max_correct,metric_max_incorrect,residual_frobenius,correct_so_far\n";
  const std::vector<bool> correct = trace.correct_so_far(truth);
  for (std::size_t t = 0; t < trace.records.size(); ++t) {
    const auto& record = trace.records[t];
    double max_correct = 0.0;
    double max_incorrect = 0.0;
    for (Index j = 0; j < record.metric_values.size(); ++j) {
      double& slot = truth.contains(j) ? max_correct : max_incorrect;
      slot = std::max(slot, record.metric_values(j));
    }
    out << record.t << ',' << record.selected_atom << ',' << format_double(max_correct)
        << ',' << format_double(max_incorrect) << ','
        << format_double(record.residual_frobenius) << ',' << (correct[t] ? 1 : 0) << '\n';
  }
}

void write_ric_csv(const std::filesystem::path& path, const rip::RicTable& table) {
  auto out = open_for_write(path);
  out << "s,delta,binding_side,witness_indices\n";
  for (Index s = 1; s <= table.max_order(); ++s) {
    out << s << ',' << format_double(table.delta(s)) << ',' << rip::to_string(table.side(s))
        << ',';
    const auto& witness = table.witness(s);
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i > 0) out << ';';
      out << witness[i];
    }
    out << '\n';
  }
}

void write_reports_csv(const std::filesystem::path& path,
                       const std::vector<bounds::BoundReport>& reports) {
  auto out = open_for_write(path);
  out << "t,Jt_size,delta,exact_metric,thm1_psi,thm1_tau,thm1_bound,thm2_bound,"
         "ratio_r,ratio_lower,ratio_upper\n";
  for (const auto& report : reports) {
    out << report.t << ',' << report.jt_size() << ',' << format_double(report.delta) << ','
        << format_double(report.exact) << ',' << format_double(report.psi) << ','
        << format_double(report.tau) << ',' << format_double(report.rip_bound) << ','
        << format_double(report.frobenius_bound) << ',' << format_double(report.ratio) << ','
        << format_double(report.ratio_lower) << ',' << format_double(report.ratio_upper)
        << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& rows) {
  auto out = open_for_write(path);
  out << "key,value\n";
  for (const auto& [key, value] : rows) {
    out << key << ',' << value << '\n';
  }
}

}  // namespace somp::io
