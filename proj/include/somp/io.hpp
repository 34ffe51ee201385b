// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include <somp/bounds.hpp>
#include <somp/model.hpp>
#include <somp/pursuit.hpp>
#include <somp/rip.hpp>
#include <somp/types.hpp>

// Plain-text persistence: the "rows cols" matrix format, one-directory
// instance layout, and the CSV schemas for traces, constants and reports.
// All floating-point output is written with 17 significant digits so values
// round-trip exactly and reruns are byte-identical.

namespace somp::io {

/// Writes "rows cols" followed by one whitespace-separated row per line.
void write_matrix(const std::filesystem::path& path, const Matrix& a);
Matrix read_matrix(const std::filesystem::path& path);

/// Directory layout: phi.txt, x.txt, y.txt plus meta.txt with key=value
/// lines (m, n, K, s, seed, scenario, rng).
void write_instance(const std::filesystem::path& dir, const model::MmvInstance& instance);
model::MmvInstance read_instance(const std::filesystem::path& dir);

/// CSV columns: t,j_t,metric_max_correct,metric_max_incorrect,
/// residual_frobenius,correct_so_far.
void write_trace_csv(const std::filesystem::path& path, const pursuit::PursuitTrace& trace,
                     const model::Support& truth);

/// CSV columns: s,delta,binding_side,witness_indices (witness indices are
/// ';'-separated, ascending).
void write_ric_csv(const std::filesystem::path& path, const rip::RicTable& table);

/// CSV columns: t,Jt_size,delta,exact_metric,thm1_psi,thm1_tau,thm1_bound,
/// thm2_bound,ratio_r,ratio_lower,ratio_upper. Undefined ratios are written
/// as nan.
void write_reports_csv(const std::filesystem::path& path,
                       const std::vector<bounds::BoundReport>& reports);

/// key,value summary lines, in the order given.
void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& rows);

std::string format_double(double value);

}  // namespace somp::io
