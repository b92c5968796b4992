#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anchorfix/fixed_point_map.hpp"
#include "anchorfix/problems.hpp"
#include "anchorfix/trace.hpp"
#include "anchorfix/vector.hpp"

namespace anchorfix {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitInvariantViolation = 3;

enum class ProblemKind { WorkedExample, Example51, Rotation, Lasso };
enum class ScheduleChoice { Adaptive, OpenLoop };

struct RunConfig {
  ProblemKind problem = ProblemKind::WorkedExample;
  ScheduleChoice schedule = ScheduleChoice::Adaptive;
  double alpha = 1.0;
  double tol = 1e-4;
  long max_iters = 200000;
  std::uint64_t seed = 1;
  long m = 120;
  long n = 512;
  long K = 20;
  long repeats = 10;
  long thin = 1;
  std::string out_dir = "out";
  // lasso-bench sizes; when empty, the single (m, n, K) above is used.
  std::vector<std::array<long, 3>> sizes;
};

// A problem instance ready to run: the map, the start, an optional reference
// point (a known fixed point, or the planted signal for lasso), and an
// optional objective.
struct ProblemSetup {
  FixedPointMap map;
  Vector x0;
  std::optional<Vector> reference;
  bool reference_is_fixed_point = false;
  std::function<double(const Vector&)> objective;
  std::optional<LassoInstance> lasso;
  std::string name;
};

ProblemSetup make_problem(const RunConfig& cfg);

// Subcommands. Each writes its files under cfg.out_dir and returns an exit
// code. cmd_solve writes trace.csv and summary.json (plus instance.json for
// lasso); cmd_compare writes compare.csv and compare_summary.json;
// cmd_lasso_bench writes table.csv; cmd_verify writes verify_report.json.
int cmd_solve(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);
int cmd_lasso_bench(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

// Full argv entry point: parses flags, applies the ANCHORFIX_OUT override,
// dispatches. Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace anchorfix
