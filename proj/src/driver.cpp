#include "anchorfix/driver.hpp"

#include <chrono>
#include <stdexcept>
#include <string>

namespace anchorfix {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ResidualBelowTol: return "residual_below_tol";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::ExactFixedPoint: return "exact_fixed_point";
  }
  return "?";
}

const char* to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Adaptive: return "adaptive";
    case ScheduleKind::OpenLoop: return "open_loop";
    case ScheduleKind::Picard: return "picard";
  }
  return "?";
}

namespace {

void ensure_finite(const Vector& v, long k) {
  if (!all_finite(v))
    throw std::runtime_error("map returned a non-finite value at iteration " + std::to_string(k));
}

}  // namespace

IterationTrace run_iteration(const FixedPointMap& map, const Vector& x0,
                             AnchoringSchedule& schedule, const StopRule& stop,
                             const RunOptions& opts) {
  if (!(stop.tolerance > 0.0)) throw std::invalid_argument("run_iteration: tolerance must be positive");
  if (stop.max_iterations < 1) throw std::invalid_argument("run_iteration: max_iterations must be at least 1");
  if (opts.thin < 1) throw std::invalid_argument("run_iteration: thin must be at least 1");
  if (x0.size() != map.dimension()) throw std::invalid_argument("run_iteration: x0 dimension mismatch");
  if (!all_finite(x0)) throw std::invalid_argument("run_iteration: x0 has non-finite entries");
  if (opts.reference && opts.reference->size() != x0.size())
    throw std::invalid_argument("run_iteration: reference dimension mismatch");

  IterationTrace trace;
  trace.x0 = x0;
  trace.schedule = schedule.kind();

  schedule.begin(x0);
  const long evals_before = map.evaluation_count();
  const auto t_start = std::chrono::steady_clock::now();

  Vector x = x0;
  Vector t = map(x);
  ensure_finite(t, 0);
  double res = norm_diff(x, t);
  if (opts.keep_vectors) trace.steps.push_back({x, t});

  long k = 0;
  double last_param = 0.0;
  Termination term = Termination::MaxIterations;

  auto make_record = [&](long kk, double param, double r, const Vector& xx) {
    IterationRecord rec;
    rec.k = kk;
    rec.parameter = param;
    rec.residual = r;
    if (opts.reference) rec.dist_to_ref = norm_diff(xx, *opts.reference);
    if (opts.objective) rec.objective = opts.objective(xx);
    return rec;
  };

  while (true) {
    if (res * res < kDenominatorGuard) {
      term = Termination::ExactFixedPoint;
      break;
    }
    if (res < stop.tolerance) {
      term = Termination::ResidualBelowTol;
      break;
    }
    if (k >= stop.max_iterations) {
      term = Termination::MaxIterations;
      break;
    }
    ++k;
    auto [x_next, param] = schedule.step(k, x, t);
    Vector t_next = map(x_next);
    ensure_finite(t_next, k);
    x = std::move(x_next);
    t = std::move(t_next);
    res = norm_diff(x, t);
    last_param = param;
    if (opts.keep_vectors) trace.steps.push_back({x, t});
    if ((k - 1) % opts.thin == 0) trace.records.push_back(make_record(k, param, res, x));
  }

  // The final step is always present, whatever the thinning.
  if (k >= 1 && (trace.records.empty() || trace.records.back().k != k))
    trace.records.push_back(make_record(k, last_param, res, x));

  const auto t_end = std::chrono::steady_clock::now();
  trace.wall_seconds = std::chrono::duration<double>(t_end - t_start).count();
  trace.final_point = std::move(x);
  trace.final_residual = res;
  trace.iterations = k;
  trace.evaluations = map.evaluation_count() - evals_before;
  trace.clamp_count = schedule.clamp_count();
  trace.termination = term;
  trace.schedule_label = schedule.label();
  return trace;
}

}  // namespace anchorfix
