#pragma once

#include <string>
#include <vector>

#include "anchorfix/trace.hpp"

namespace anchorfix {

// Reals are printed with 17 significant digits so that parsing the text back
// recovers the exact double.
std::string fmt_real(double v);

// Columns: k, parameter, lambda_equiv, residual, dist_to_ref, objective.
// Optional columns are left empty where absent.
void write_trace_csv(const std::string& path, const IterationTrace& trace);

// Columns: k, residual_adaptive, residual_openloop, phi_k, lambda_k, with
// empty cells beyond the shorter run. Requires thin == 1 traces.
void write_compare_csv(const std::string& path, const IterationTrace& adaptive,
                       const IterationTrace& open_loop);

struct BenchRow {
  long m = 0;
  long n = 0;
  long K = 0;
  std::string schedule;
  double mean_iter = 0.0;
  double mean_cpu_seconds = 0.0;
  double mean_err = 0.0;
};

// Columns: m, n, K, schedule, mean_iter, mean_cpu_seconds, mean_err.
void write_table_csv(const std::string& path, const std::vector<BenchRow>& rows);

// Minimal reader for the files written above: header row plus string cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace anchorfix
