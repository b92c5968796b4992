#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anchorfix/vector.hpp"

namespace anchorfix {

enum class Termination { ResidualBelowTol, MaxIterations, ExactFixedPoint };

enum class ScheduleKind { Adaptive, OpenLoop, Picard };

const char* to_string(Termination t);
const char* to_string(ScheduleKind k);

// One logged iteration. `parameter` is the anchoring coefficient phi_k for the
// adaptive schedule and the step weight lambda_k for open-loop schedules.
struct IterationRecord {
  long k = 0;
  double parameter = 0.0;
  double residual = 0.0;
  std::optional<double> dist_to_ref;
  std::optional<double> objective;
};

// The step weight lambda_k implied by a record, across schedule families.
inline double lambda_equivalent(const IterationRecord& r, ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Adaptive:
      return 1.0 / (r.parameter + 1.0);
    case ScheduleKind::OpenLoop:
      return r.parameter;
    case ScheduleKind::Picard:
      return 0.0;
  }
  return 0.0;
}

// Iterate and its image, retained when RunOptions::keep_vectors is set.
// steps[k] holds (x^k, T x^k); index 0 is the starting point.
struct StepVectors {
  Vector x;
  Vector t;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  std::vector<StepVectors> steps;
  Vector x0;
  Vector final_point;
  double final_residual = 0.0;
  long iterations = 0;
  long evaluations = 0;
  long clamp_count = 0;
  double wall_seconds = 0.0;
  Termination termination = Termination::MaxIterations;
  ScheduleKind schedule = ScheduleKind::Adaptive;
  std::string schedule_label;

  bool converged() const { return termination != Termination::MaxIterations; }
};

struct StopRule {
  double tolerance = 1e-4;
  long max_iterations = 200000;
};

struct RunOptions {
  std::optional<Vector> reference;                  // enables the dist_to_ref column
  std::function<double(const Vector&)> objective;   // enables the objective column
  long thin = 1;                                    // record every thin-th step
  bool keep_vectors = false;                        // retain (x^k, T x^k) per step
};

}  // namespace anchorfix
