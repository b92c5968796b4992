#include "anchorfix/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "anchorfix/analytic.hpp"
#include "anchorfix/csv.hpp"
#include "anchorfix/driver.hpp"
#include "anchorfix/operators.hpp"
#include "anchorfix/rng.hpp"
#include "anchorfix/schedules.hpp"
#include "anchorfix/verify.hpp"

namespace anchorfix {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::filesystem::path ensure_out_dir(const std::string& out_dir) {
  std::filesystem::path p(out_dir);
  std::filesystem::create_directories(p);
  return p;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

std::unique_ptr<AnchoringSchedule> make_schedule(ScheduleChoice choice, double alpha) {
  if (choice == ScheduleChoice::Adaptive) return std::make_unique<AdaptiveSchedule>();
  return std::make_unique<OpenLoopSchedule>(alpha);
}

nlohmann::json trace_summary_json(const ProblemSetup& setup, const IterationTrace& trace,
                                  const RunConfig& cfg) {
  nlohmann::json j;
  j["problem"] = setup.name;
  j["schedule"] = trace.schedule_label;
  j["termination"] = to_string(trace.termination);
  j["converged"] = trace.converged();
  j["iterations"] = trace.iterations;
  j["evaluations"] = trace.evaluations;
  j["clamp_count"] = trace.clamp_count;
  j["wall_seconds"] = trace.wall_seconds;
  j["tol"] = cfg.tol;
  j["max_iters"] = cfg.max_iters;
  j["thin"] = cfg.thin;
  j["final_residual"] = trace.final_residual;
  j["final_point"] = trace.final_point;
  if (!trace.records.empty()) {
    const auto& last = trace.records.back();
    if (last.dist_to_ref) j["dist_to_ref"] = *last.dist_to_ref;
    if (last.objective) j["objective"] = *last.objective;
  }
  if (setup.lasso) {
    j["seed"] = setup.lasso->seed;
    j["m"] = setup.lasso->m;
    j["n"] = setup.lasso->n;
    j["K"] = setup.lasso->K;
    j["err"] = relative_error(trace.final_point, setup.lasso->x_true);
  }
  return j;
}

void print_summary_line(const ProblemSetup& setup, const IterationTrace& trace) {
  std::cout << setup.name << '/' << trace.schedule_label << ": " << to_string(trace.termination)
            << " residual=" << fmt_real(trace.final_residual) << " iters=" << trace.iterations
            << " evals=" << trace.evaluations << " wall=" << trace.wall_seconds << "s\n";
}

}  // namespace

ProblemSetup make_problem(const RunConfig& cfg) {
  switch (cfg.problem) {
    case ProblemKind::WorkedExample:
      return {worked_example_map(),
              {0.0, 0.0},
              Vector{worked_example_limit(1e-16), 2.0},
              true,
              nullptr,
              std::nullopt,
              "worked-example"};
    case ProblemKind::Example51:
      // Start on the side of the |x| kink where the map is strictly contractive;
      // there the adaptive parameters grow superlinearly and anchoring pays off.
      return {benchmark3_map(), {-1.0, -1.0, -1.0}, Vector{0.0, 0.0, 0.0},
              true,             nullptr,            std::nullopt,
              "example51"};
    case ProblemKind::Rotation:
      return {rotation_map(kPi / 2.0), {1.0, 0.0}, Vector{0.0, 0.0}, true, nullptr, std::nullopt,
              "rotation"};
    case ProblemKind::Lasso: {
      auto inst = std::make_shared<const LassoInstance>(
          generate_lasso(cfg.m, cfg.n, cfg.K, cfg.seed));
      return {lasso_map(*inst),
              Vector(static_cast<std::size_t>(cfg.n), 0.0),
              inst->x_true,
              false,
              [inst](const Vector& x) { return lasso_objective(x, *inst); },
              *inst,
              "lasso"};
    }
  }
  throw std::logic_error("make_problem: unknown problem kind");
}

int cmd_solve(const RunConfig& cfg) {
  const auto out = ensure_out_dir(cfg.out_dir);
  ProblemSetup setup = make_problem(cfg);
  auto schedule = make_schedule(cfg.schedule, cfg.alpha);

  RunOptions opts;
  opts.reference = setup.reference;
  opts.objective = setup.objective;
  opts.thin = cfg.thin;
  IterationTrace trace =
      run_iteration(setup.map, setup.x0, *schedule, {cfg.tol, cfg.max_iters}, opts);

  write_trace_csv((out / "trace.csv").string(), trace);
  write_text(out / "summary.json", trace_summary_json(setup, trace, cfg).dump(2));
  if (setup.lasso) write_text(out / "instance.json", lasso_header_json(*setup.lasso));
  print_summary_line(setup, trace);
  return trace.converged() ? kExitOk : kExitNotConverged;
}

int cmd_compare(const RunConfig& cfg) {
  const auto out = ensure_out_dir(cfg.out_dir);
  ProblemSetup setup = make_problem(cfg);

  RunOptions opts;
  opts.reference = setup.reference;
  opts.objective = setup.objective;
  opts.thin = 1;  // the side-by-side file needs every step

  AdaptiveSchedule adaptive;
  IterationTrace ta = run_iteration(setup.map, setup.x0, adaptive, {cfg.tol, cfg.max_iters}, opts);
  OpenLoopSchedule open_loop(cfg.alpha);
  IterationTrace to = run_iteration(setup.map, setup.x0, open_loop, {cfg.tol, cfg.max_iters}, opts);

  write_compare_csv((out / "compare.csv").string(), ta, to);

  nlohmann::json j;
  j["problem"] = setup.name;
  j["tol"] = cfg.tol;
  j["max_iters"] = cfg.max_iters;
  j["adaptive"] = trace_summary_json(setup, ta, cfg);
  j["open_loop"] = trace_summary_json(setup, to, cfg);
  j["iter_ratio"] =
      ta.iterations > 0 ? static_cast<double>(to.iterations) / static_cast<double>(ta.iterations)
                        : 0.0;
  write_text(out / "compare_summary.json", j.dump(2));

  print_summary_line(setup, ta);
  print_summary_line(setup, to);
  std::cout << "iter ratio open-loop/adaptive: " << j["iter_ratio"].get<double>() << "\n";
  return ta.converged() && to.converged() ? kExitOk : kExitNotConverged;
}

int cmd_lasso_bench(const RunConfig& cfg) {
  const auto out = ensure_out_dir(cfg.out_dir);
  std::vector<std::array<long, 3>> sizes = cfg.sizes;
  if (sizes.empty()) sizes.push_back({cfg.m, cfg.n, cfg.K});

  std::vector<BenchRow> rows;
  bool all_converged = true;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    const auto [m, n, K] = sizes[s];
    double sum_iter[2] = {0.0, 0.0}, sum_wall[2] = {0.0, 0.0}, sum_err[2] = {0.0, 0.0};
    for (long r = 0; r < cfg.repeats; ++r) {
      const std::uint64_t cell_seed =
          mix_seed(cfg.seed, static_cast<std::uint64_t>(s) * 100000ULL + static_cast<std::uint64_t>(r));
      const LassoInstance inst = generate_lasso(m, n, K, cell_seed);
      const FixedPointMap map = lasso_map(inst);
      const Vector x0(static_cast<std::size_t>(n), 0.0);
      for (int which = 0; which < 2; ++which) {
        auto schedule = make_schedule(which == 0 ? ScheduleChoice::Adaptive
                                                 : ScheduleChoice::OpenLoop,
                                      cfg.alpha);
        RunOptions opts;
        opts.thin = cfg.max_iters;  // only the final record matters here
        IterationTrace t = run_iteration(map, x0, *schedule, {cfg.tol, cfg.max_iters}, opts);
        all_converged = all_converged && t.converged();
        sum_iter[which] += static_cast<double>(t.iterations);
        sum_wall[which] += t.wall_seconds;
        sum_err[which] += relative_error(t.final_point, inst.x_true);
      }
    }
    for (int which = 0; which < 2; ++which) {
      BenchRow row;
      row.m = m;
      row.n = n;
      row.K = K;
      row.schedule = which == 0 ? "adaptive" : "open_loop";
      const double reps = static_cast<double>(cfg.repeats);
      row.mean_iter = sum_iter[which] / reps;
      row.mean_cpu_seconds = std::round(sum_wall[which] / reps * 1000.0) / 1000.0;
      row.mean_err = sum_err[which] / reps;
      rows.push_back(row);
      std::cout << row.m << 'x' << row.n << " K=" << row.K << ' ' << row.schedule
                << ": mean_iter=" << row.mean_iter << " mean_cpu=" << row.mean_cpu_seconds
                << "s mean_err=" << row.mean_err << "\n";
    }
  }
  write_table_csv((out / "table.csv").string(), rows);
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const RunConfig& cfg) {
  const auto out = ensure_out_dir(cfg.out_dir);
  VerifyReport report = run_verify_suite(cfg.seed);
  write_text(out / "verify_report.json", verify_report_json(report));
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << " -- " << c.detail << "\n";
  std::cout << (report.all_pass() ? "all invariants hold" : "invariant violations found") << "\n";
  return report.all_pass() ? kExitOk : kExitInvariantViolation;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Anchored fixed-point iteration toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string problem = "worked-example";
  std::string schedule = "adaptive";

  const std::map<std::string, ProblemKind> problem_names{
      {"worked-example", ProblemKind::WorkedExample},
      {"example51", ProblemKind::Example51},
      {"rotation", ProblemKind::Rotation},
      {"lasso", ProblemKind::Lasso}};
  const std::map<std::string, ScheduleChoice> schedule_names{
      {"adaptive", ScheduleChoice::Adaptive}, {"open-loop", ScheduleChoice::OpenLoop}};

  auto add_common = [&](CLI::App* sub, bool with_problem, bool with_schedule) {
    if (with_problem)
      sub->add_option("--problem", problem, "problem to run")
          ->check(CLI::IsMember({"worked-example", "example51", "rotation", "lasso"}));
    if (with_schedule)
      sub->add_option("--schedule", schedule, "iteration schedule")
          ->check(CLI::IsMember({"adaptive", "open-loop"}));
    sub->add_option("--alpha", cfg.alpha, "open-loop weight exponent, in (0, 1]")
        ->check(CLI::Range(1e-9, 1.0));
    sub->add_option("--tol", cfg.tol, "residual stopping tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", cfg.max_iters, "iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "instance seed (lasso only)");
    sub->add_option("--m", cfg.m, "rows (lasso only)")->check(CLI::PositiveNumber);
    sub->add_option("--n", cfg.n, "columns (lasso only)")->check(CLI::PositiveNumber);
    sub->add_option("--k", cfg.K, "planted support size (lasso only)")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_dir, "output directory");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one schedule on one problem");
  add_common(solve, true, true);
  solve->add_option("--thin", cfg.thin, "record every n-th iteration")->check(CLI::PositiveNumber);

  CLI::App* compare = app.add_subcommand("compare", "run both schedules on one problem");
  add_common(compare, true, false);

  CLI::App* bench = app.add_subcommand("lasso-bench", "seeded sparse-recovery sweep");
  add_common(bench, false, false);
  bench->add_option("--repeats", cfg.repeats, "instances per size")->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--seed", cfg.seed, "randomized-check seed");
  verify->add_option("--out", cfg.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  cfg.problem = problem_names.at(problem);
  cfg.schedule = schedule_names.at(schedule);

  // Flags that only make sense for specific problems or schedules.
  CLI::App* active = solve->parsed() ? solve : compare->parsed() ? compare : nullptr;
  if (active != nullptr && cfg.problem != ProblemKind::Lasso) {
    for (const char* flag : {"--seed", "--m", "--n", "--k"})
      if (active->count(flag) > 0) {
        std::cerr << "usage error: " << flag << " applies to the lasso problem only\n";
        return kExitUsage;
      }
  }
  if (solve->parsed() && cfg.schedule == ScheduleChoice::Adaptive && solve->count("--alpha") > 0) {
    std::cerr << "usage error: --alpha applies to the open-loop schedule only\n";
    return kExitUsage;
  }

  if (const char* env_out = std::getenv("ANCHORFIX_OUT"); env_out != nullptr && *env_out != '\0')
    cfg.out_dir = env_out;

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (compare->parsed()) return cmd_compare(cfg);
    if (bench->parsed()) return cmd_lasso_bench(cfg);
    return cmd_verify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace anchorfix
