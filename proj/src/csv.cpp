#include "anchorfix/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anchorfix {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_trace_csv(const std::string& path, const IterationTrace& trace) {
  auto out = open_out(path);
  out << "k,parameter,lambda_equiv,residual,dist_to_ref,objective\n";
  for (const auto& rec : trace.records) {
    out << rec.k << ',' << fmt_real(rec.parameter) << ','
        << fmt_real(lambda_equivalent(rec, trace.schedule)) << ',' << fmt_real(rec.residual) << ',';
    if (rec.dist_to_ref) out << fmt_real(*rec.dist_to_ref);
    out << ',';
    if (rec.objective) out << fmt_real(*rec.objective);
    out << '\n';
  }
  finish(out, path);
}

void write_compare_csv(const std::string& path, const IterationTrace& adaptive,
                       const IterationTrace& open_loop) {
  if (adaptive.schedule != ScheduleKind::Adaptive || open_loop.schedule != ScheduleKind::OpenLoop)
    throw std::invalid_argument("write_compare_csv: traces in the wrong order");
  for (const IterationTrace* t : {&adaptive, &open_loop})
    for (std::size_t i = 0; i < t->records.size(); ++i)
      if (t->records[i].k != static_cast<long>(i) + 1)
        throw std::invalid_argument("write_compare_csv: traces must be recorded with thin == 1");

  auto out = open_out(path);
  out << "k,residual_adaptive,residual_openloop,phi_k,lambda_k\n";
  const std::size_t rows = std::max(adaptive.records.size(), open_loop.records.size());
  for (std::size_t i = 0; i < rows; ++i) {
    out << (i + 1) << ',';
    if (i < adaptive.records.size()) out << fmt_real(adaptive.records[i].residual);
    out << ',';
    if (i < open_loop.records.size()) out << fmt_real(open_loop.records[i].residual);
    out << ',';
    if (i < adaptive.records.size()) out << fmt_real(adaptive.records[i].parameter);
    out << ',';
    if (i < open_loop.records.size()) out << fmt_real(open_loop.records[i].parameter);
    out << '\n';
  }
  finish(out, path);
}

void write_table_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  auto out = open_out(path);
  out << "m,n,K,schedule,mean_iter,mean_cpu_seconds,mean_err\n";
  for (const auto& r : rows)
    out << r.m << ',' << r.n << ',' << r.K << ',' << r.schedule << ',' << fmt_real(r.mean_iter)
        << ',' << fmt_real(r.mean_cpu_seconds) << ',' << fmt_real(r.mean_err) << '\n';
  finish(out, path);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace anchorfix
